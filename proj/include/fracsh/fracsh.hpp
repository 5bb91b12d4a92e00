#pragma once

#include "fracsh/analysis.hpp"
#include "fracsh/classes.hpp"
#include "fracsh/decomposition.hpp"
#include "fracsh/error.hpp"
#include "fracsh/geometry.hpp"
#include "fracsh/harmonics.hpp"
#include "fracsh/numerics.hpp"
#include "fracsh/rational.hpp"
