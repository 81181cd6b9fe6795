#pragma once

#include "matrecover/bamram.hpp"
#include "matrecover/core/banded_matrix.hpp"
#include "matrecover/core/decay.hpp"
#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/matrix_market.hpp"
#include "matrecover/core/norms.hpp"
#include "matrecover/core/parallel.hpp"
#include "matrecover/core/sparse_matrix.hpp"
#include "matrecover/core/types.hpp"
#include "matrecover/greedy.hpp"
#include "matrecover/harness.hpp"
#include "matrecover/kron.hpp"
#include "matrecover/matfun.hpp"
#include "matrecover/sensing.hpp"
#include "matrecover/spamram.hpp"
