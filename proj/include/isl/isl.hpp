#pragma once

#include "isl/error.hpp"
#include "isl/domain.hpp"
#include "isl/magma.hpp"
#include "isl/parallel.hpp"
#include "isl/laws.hpp"
#include "isl/formal_sum.hpp"
#include "isl/matrix.hpp"
#include "isl/handle.hpp"
#include "isl/analysis.hpp"
#include "isl/sweeps.hpp"
#include "isl/expr.hpp"
#include "isl/json_io.hpp"
#include "isl/cli.hpp"
