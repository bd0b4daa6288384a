#include "tentsolve/layers.hpp"

#include <omp.h>

#include <exception>
#include <limits>
#include <string>

#include "tentsolve/error.hpp"

namespace tentsolve {

namespace {

[[noreturn]] void rethrow_for_tent(int tent, std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    throw TentFailure("tent " + std::to_string(tent) + " failed: " + e.what(), tent);
  } catch (...) {
    throw TentFailure("tent " + std::to_string(tent) + " failed", tent);
  }
}

}  // namespace

int max_workers() { return omp_get_max_threads(); }

void execute_layers(const TentSlab& slab, const TentTask& task, int workers) {
  if (workers < 1) throw InvalidArgument("need at least one worker");
  for (const auto& layer : slab.levels) {
    const int count = static_cast<int>(layer.size());
    int failed = std::numeric_limits<int>::max();
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers) if (workers > 1 && count > 1)
    for (int i = 0; i < count; ++i) {
      const int tent = layer[i];
      try {
        task(tent);
      } catch (...) {
#pragma omp critical(tentsolve_layer_error)
        {
          if (tent < failed) {
            failed = tent;
            error = std::current_exception();
          }
        }
      }
    }
    if (error) rethrow_for_tent(failed, error);
  }
}

void execute_serial(const TentSlab& slab, const TentTask& task) {
  for (int i = 0; i < static_cast<int>(slab.tents.size()); ++i) {
    try {
      task(i);
    } catch (...) {
      rethrow_for_tent(i, std::current_exception());
    }
  }
}

}  // namespace tentsolve
