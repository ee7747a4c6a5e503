#pragma once

// Umbrella header: two-phase stock time-series forecasting. Phase one
// compresses a price series through a multilevel segment-mean hierarchy;
// phase two predicts upcoming values by averaging the successors of the
// nearest historical patterns. A walk-forward harness scores forecasts
// with MER/MAE against a persistence baseline.

#include "apst/backtest.hpp"
#include "apst/counters.hpp"
#include "apst/csv.hpp"
#include "apst/errors.hpp"
#include "apst/knn.hpp"
#include "apst/metrics.hpp"
#include "apst/msm.hpp"
#include "apst/report.hpp"
#include "apst/run.hpp"
#include "apst/series.hpp"
#include "apst/summation.hpp"
