#pragma once

#include "subhardy/analysis.hpp"
#include "subhardy/catalog.hpp"
#include "subhardy/coeff_vector.hpp"
#include "subhardy/hypothesis.hpp"
#include "subhardy/orthonormal.hpp"
#include "subhardy/shift_operator.hpp"
#include "subhardy/spaces.hpp"
#include "subhardy/structure.hpp"
#include "subhardy/types.hpp"
#include "subhardy/weight_sequence.hpp"
