#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "screedsolo/metrics.hpp"

namespace screedsolo {

// Flat JSON document with the eight report fields plus the fixed metric
// parameters. Non-finite values (identical images) serialize as the string
// "inf" since JSON has no infinity literal.
inline nlohmann::json fidelity_report_json(const FidelityReport& rep) {
    const auto number_or_inf = [](double v) -> nlohmann::json {
        if (std::isinf(v))
            return "inf";
        return v;
    };
    return nlohmann::json{
        {"cover_loss_percent", rep.cover_loss_percent},
        {"csim", rep.csim},
        {"mse", rep.mse},
        {"psnr_db", number_or_inf(rep.psnr_db)},
        {"ssim", rep.ssim},
        {"vi_bits", {rep.vi_ab, rep.vi_ba}},
        {"hausdorff_distance", number_or_inf(rep.hausdorff)},
        {"nrmse", rep.nrmse},
        {"parameters",
         {{"ssim_k1", kSsimK1},
          {"ssim_k2", kSsimK2},
          {"ssim_dynamic_range", kSsimL},
          {"ssim_window", kSsimWindow},
          {"ssim_sigma", kSsimSigma},
          {"hausdorff_luma_threshold", kHausdorffThreshold},
          {"vi_log_base", 2}}},
    };
}

} // namespace screedsolo
