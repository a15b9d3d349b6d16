#pragma once

#include "bls/applications.hpp"
#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/io.hpp"
#include "bls/matrix.hpp"
#include "bls/oracle.hpp"
#include "bls/pencil.hpp"
#include "bls/poly.hpp"
#include "bls/rank_one.hpp"
#include "bls/reduction.hpp"
#include "bls/solve.hpp"
#include "bls/structural.hpp"
#include "bls/system.hpp"
