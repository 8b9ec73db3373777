#pragma once

#include "hclab/errors.hpp"
#include "hclab/linalg/dense.hpp"
#include "hclab/linalg/polynomial.hpp"
#include "hclab/linalg/rational_matrix.hpp"
#include "hclab/linalg/subspace.hpp"
