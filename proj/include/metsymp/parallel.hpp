#pragma once

// Sample sweeps. Every verifier evaluates independent work items at sample
// points and reduces the per-sample results serially afterwards, so the
// parallel and serial paths produce bit-identical reports.

#include <cstddef>
#include <exception>
#include <vector>

#include "metsymp/chart.hpp"

namespace metsymp {

enum class Exec { serial, parallel };

int max_threads();

template <class R, class Items, class F>
std::vector<R> sweep(const Items& items, F&& f, Exec exec = Exec::parallel) {
  const long n = static_cast<long>(items.size());
  std::vector<R> out(items.size());
  if (exec == Exec::serial || n < 2) {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(items[static_cast<std::size_t>(i)]);
    return out;
  }
  std::vector<std::exception_ptr> errors(items.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(items[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Componentwise maximum of per-sample residual vectors.
std::vector<double> max_rows(const std::vector<std::vector<double>>& rows);
double max_of(const std::vector<double>& v);

}  // namespace metsymp
