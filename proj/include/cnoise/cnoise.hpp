#ifndef CNOISE_CNOISE_HPP
#define CNOISE_CNOISE_HPP

#include "cnoise/bank.hpp"
#include "cnoise/color.hpp"
#include "cnoise/errors.hpp"
#include "cnoise/fft.hpp"
#include "cnoise/field.hpp"
#include "cnoise/gaussian.hpp"
#include "cnoise/mask.hpp"
#include "cnoise/pipeline.hpp"
#include "cnoise/png.hpp"
#include "cnoise/rng.hpp"
#include "cnoise/spectral.hpp"
#include "cnoise/stats.hpp"

#endif // CNOISE_CNOISE_HPP
