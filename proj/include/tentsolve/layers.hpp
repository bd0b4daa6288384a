#pragma once

#include <functional>

#include "tentsolve/tents.hpp"

namespace tentsolve {

using TentTask = std::function<void(int tent)>;

/// Runs `task` for every tent, layer by layer. Tents of one layer run concurrently on
/// up to `workers` OpenMP threads; a layer starts only after the previous one has
/// finished. Tasks may only touch the degrees of freedom of their own patch.
///
/// If tasks throw, the remaining tents of that layer still run, then a TentFailure for
/// the smallest failing tent index is raised and later layers are skipped.
void execute_layers(const TentSlab& slab, const TentTask& task, int workers);

/// Serial reference: runs the tents one by one in pitch order.
void execute_serial(const TentSlab& slab, const TentTask& task);

/// Number of OpenMP threads available to execute_layers.
int max_workers();

}  // namespace tentsolve
