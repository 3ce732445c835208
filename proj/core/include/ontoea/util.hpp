#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace ontoea {

/// Worker count for parallel sections: ONTOEA_THREADS if set, else the
/// hardware concurrency. Always >= 1.
std::size_t thread_budget();

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Results must be written to disjoint, pre-sized slots so the
/// outcome is independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

/// Splits on a single separator character. Keeps empty fields.
std::vector<std::string> split(const std::string& line, char sep);

} // namespace ontoea
