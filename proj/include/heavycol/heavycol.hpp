#pragma once

#include "heavycol/algorithms.hpp"
#include "heavycol/error.hpp"
#include "heavycol/matrix.hpp"
#include "heavycol/profiler.hpp"
#include "heavycol/report.hpp"
#include "heavycol/structure.hpp"
#include "heavycol/verification.hpp"
