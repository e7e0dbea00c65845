#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fgl/families.hpp"
#include "fgl/kernel.hpp"
#include "fgl/solver.hpp"

namespace fgl {

enum class ScanWhat { Winner, Kernel };

struct ScanSpec {
  /// tri, torus or gk
  std::string family;
  /// One parameter list per instance, in output order.
  std::vector<std::vector<std::size_t>> instances;
  ScanWhat what = ScanWhat::Winner;
  SearchLimits limits;
  unsigned threads = 1;
};

struct ScanRow {
  std::string family;
  std::string params;
  std::string start;
  std::string mode;
  /// ALICE, BOB, FOUND, NONE, TIMEOUT or ERROR
  std::string result;
  std::uint64_t states = 0;
  double seconds = 0;
};

namespace detail {

inline std::vector<std::size_t> parse_span(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (s.empty() || pos != s.size()) throw std::invalid_argument("bad number '" + s + "' in range '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    if (auto dots = part.find(".."); dots != std::string::npos) {
      const auto lo = number(part.substr(0, dots));
      const auto hi = number(part.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument("empty range '" + part + "'");
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(number(part));
    }
  }
  if (out.empty()) throw std::invalid_argument("empty range '" + text + "'");
  return out;
}

}  // namespace detail

/// "1..5", "2,4,6", or for torus "2..5x2..5" (rows outer, columns inner).
inline std::vector<std::vector<std::size_t>> parse_scan_range(const std::string& family, const std::string& range) {
  std::vector<std::vector<std::size_t>> out;
  if (family == "torus") {
    const auto x = range.find('x');
    if (x == std::string::npos) throw std::invalid_argument("torus range needs the form MxN, e.g. 2..5x2..5");
    for (auto m : detail::parse_span(range.substr(0, x))) {
      for (auto n : detail::parse_span(range.substr(x + 1))) out.push_back({m, n});
    }
  } else if (family == "tri" || family == "gk") {
    for (auto n : detail::parse_span(range)) out.push_back({n});
  } else {
    throw std::invalid_argument("unknown family '" + family + "' (tri, torus, gk)");
  }
  return out;
}

inline ScanRow scan_one(const std::string& family, const std::vector<std::size_t>& params, ScanWhat what,
                        const SearchLimits& limits) {
  ScanRow row;
  row.family = family;
  row.mode = what == ScanWhat::Winner ? "winner" : "kernel";
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Graph g;
    VertexId s = 0;
    if (family == "tri") {
      row.params = std::to_string(params.at(0));
      TriangularGrid t(params.at(0));
      g = t.graph();
      s = t.vertex(0, 0);
    } else if (family == "torus") {
      row.params = std::to_string(params.at(0)) + "x" + std::to_string(params.at(1));
      ToroidalGrid q(params.at(0), params.at(1));
      g = q.graph();
      s = q.vertex(0, 0);
    } else if (family == "gk") {
      row.params = std::to_string(params.at(0));
      GkGraph gk(params.at(0));
      g = gk.graph();
      s = gk.s();
    } else {
      throw std::invalid_argument("unknown family '" + family + "'");
    }
    row.start = g.label(s);
    if (what == ScanWhat::Winner) {
      auto v = solve(g, s, Variant::Feedback, limits, false);
      row.result = std::string(to_string(v.winner));
      row.states = v.states_visited;
    } else {
      auto r = search_even_kernel(g, s, limits.max_states);
      row.result = r.kernel ? "FOUND" : "NONE";
      row.states = r.nodes;
    }
  } catch (const BudgetExceeded& ex) {
    row.result = "TIMEOUT";
    row.states = ex.stats().states_visited;
  } catch (const std::exception&) {
    row.result = "ERROR";
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// One row per instance, in instance order. Rows are computed on up to
/// spec.threads workers; a failing row never aborts the scan.
inline std::vector<ScanRow> scan(const ScanSpec& spec) {
  spec.limits.validate();
  std::vector<ScanRow> rows(spec.instances.size());
  SearchLimits row_limits = spec.limits;
  row_limits.threads = 1;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i] = scan_one(spec.family, spec.instances[i], spec.what, row_limits);
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(spec.threads, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

/// CSV with a header line. With `timing` off the seconds column is written
/// as 0 so that the output only depends on the configuration.
inline std::string scan_csv(const std::vector<ScanRow>& rows, bool timing = true) {
  std::ostringstream out;
  out << "family,params,start,mode,result,states,seconds\n";
  for (const auto& r : rows) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", timing ? r.seconds : 0.0);
    out << r.family << ',' << r.params << ",\"" << r.start << "\"," << r.mode << ',' << r.result << ','
        << r.states << ',' << secs << '\n';
  }
  return out.str();
}

}  // namespace fgl
