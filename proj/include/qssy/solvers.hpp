#pragma once

#include "qssy/solvers/adjoint_pair.hpp"
#include "qssy/solvers/common.hpp"
#include "qssy/solvers/qgmres.hpp"
#include "qssy/solvers/qnherlq.hpp"
#include "qssy/solvers/qnherqr.hpp"
#include "qssy/solvers/recurrences.hpp"
