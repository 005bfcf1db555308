#pragma once

#include "mordell/arith.hpp"
#include "mordell/bump.hpp"
#include "mordell/calibration.hpp"
#include "mordell/counts.hpp"
#include "mordell/dual.hpp"
#include "mordell/error.hpp"
#include "mordell/expsums.hpp"
#include "mordell/oscillatory.hpp"
#include "mordell/parallel.hpp"
#include "mordell/quadrature.hpp"
#include "mordell/smooth.hpp"
#include "mordell/summation.hpp"
#include "mordell/verify.hpp"

namespace mordell {
inline constexpr const char* version = "0.1.0";
}
