#pragma once

#include "pacontract/classify.hpp"
#include "pacontract/expr.hpp"
#include "pacontract/generator.hpp"
#include "pacontract/json_io.hpp"
#include "pacontract/mapping.hpp"
#include "pacontract/oracle.hpp"
#include "pacontract/solver.hpp"
#include "pacontract/space.hpp"
