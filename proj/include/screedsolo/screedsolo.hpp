#pragma once

// Umbrella header for the SCReedSolo steganography toolkit.

#include "screedsolo/base64.hpp"
#include "screedsolo/bitstream.hpp"
#include "screedsolo/deflate.hpp"
#include "screedsolo/digest.hpp"
#include "screedsolo/envelope.hpp"
#include "screedsolo/errors.hpp"
#include "screedsolo/fernet.hpp"
#include "screedsolo/gf256.hpp"
#include "screedsolo/image.hpp"
#include "screedsolo/keys.hpp"
#include "screedsolo/lsb.hpp"
#include "screedsolo/metrics.hpp"
#include "screedsolo/noise.hpp"
#include "screedsolo/payload_codec.hpp"
#include "screedsolo/png_io.hpp"
#include "screedsolo/reed_solomon.hpp"
#include "screedsolo/rng.hpp"
#include "screedsolo/shuffle.hpp"
#include "screedsolo/survival.hpp"
