#pragma once

#include <string>
#include <vector>

#include "travesty/dynamic_game.hpp"
#include "travesty/metrics.hpp"

namespace travesty {

// Flat, self-contained SVG of the ROC sweep: one polyline per zeta, detection
// rate against the classical false-alarm rate. Axes are labeled
// "P_F (classical)" and "P_D (quantum)".
std::string roc_svg(const std::vector<RatePoint>& points);

// Stage trajectories of a simulated game: per-signal u1 and u0 plus the running
// belief pH1, all on [0,1] against the stage index.
std::string trace_svg(const GameTrace& trace, const SignalModel& model);

}  // namespace travesty
