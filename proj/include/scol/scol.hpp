#ifndef SCOL_SCOL_HPP
#define SCOL_SCOL_HPP

#include "scol/color_mask.hpp"
#include "scol/dynamics.hpp"
#include "scol/error.hpp"
#include "scol/generators.hpp"
#include "scol/glauber.hpp"
#include "scol/graph.hpp"
#include "scol/influence.hpp"
#include "scol/io.hpp"
#include "scol/oracle.hpp"
#include "scol/parallel.hpp"
#include "scol/region.hpp"
#include "scol/rng.hpp"
#include "scol/spectral.hpp"
#include "scol/verify.hpp"

namespace scol {
inline constexpr const char* kSchema = "spectral-colorings/1";
}

#endif  // SCOL_SCOL_HPP
