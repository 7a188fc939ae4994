#include "solenoid/kernels.hpp"

#include <map>
#include <omp.h>

#include "solenoid/cantor.hpp"

namespace solenoid::kernels {

FiniteIndexSubgroup intersect_conjugates_serial(const std::vector<AffineElement>& reps,
                                                const FiniteIndexSubgroup& h) {
  FiniteIndexSubgroup acc = h;
  for (const auto& x : reps) acc = intersect(acc, conjugate(x.inverse(), h));
  return acc;
}

FiniteIndexSubgroup intersect_conjugates(const std::vector<AffineElement>& reps,
                                         const FiniteIndexSubgroup& h) {
  const auto n = static_cast<std::int64_t>(reps.size());
  const int threads = omp_get_max_threads();
  std::vector<FiniteIndexSubgroup> partial(threads, h);
#pragma omp parallel
  {
    const int t = omp_get_thread_num();
    FiniteIndexSubgroup local = h;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) local = intersect(local, conjugate(reps[i].inverse(), h));
    partial[t] = std::move(local);
  }
  FiniteIndexSubgroup acc = h;
  for (const auto& p : partial) acc = intersect(acc, p);
  return acc;
}

namespace {

using Maxima = std::map<Rational, Rational>;

void record(Maxima& m, const Rational& r, const Rational& k) {
  auto [it, inserted] = m.try_emplace(r, k);
  if (!inserted && it->second < k) it->second = k;
}

ModulusTable to_table(const Maxima& m) {
  std::vector<ModulusRow> rows;
  rows.reserve(m.size());
  for (const auto& [r, k] : m) rows.push_back({r, k});
  return modulus_from_maxima(std::move(rows), "pairwise");
}

void modulus_row(const CantorAction& action, int a, Maxima& m) {
  const auto& model = action.model();
  const int n = static_cast<int>(action.size());
  for (int b = a + 1; b < n; ++b) {
    const Rational r = model.distance(a, b);
    if (r == Rational(0)) continue;
    Rational k(0);
    for (const auto& g : action.generators()) {
      const Rational d = model.distance(g.perm[a], g.perm[b]);
      if (k < d) k = d;
    }
    record(m, r, k);
  }
}

}  // namespace

ModulusTable modulus_pairwise_serial(const CantorAction& action) {
  Maxima m;
  for (int a = 0; a < static_cast<int>(action.size()); ++a) modulus_row(action, a, m);
  return to_table(m);
}

ModulusTable modulus_pairwise(const CantorAction& action) {
  const int n = static_cast<int>(action.size());
  std::vector<Maxima> partial(omp_get_max_threads());
#pragma omp parallel
  {
    Maxima& local = partial[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 8)
    for (int a = 0; a < n; ++a) modulus_row(action, a, local);
  }
  Maxima m;
  for (const auto& p : partial)
    for (const auto& [r, k] : p) record(m, r, k);
  return to_table(m);
}

namespace {

std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b) {
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

void distality_row(const CantorAction& action, const std::vector<std::vector<int>>& elements, int a,
                   std::vector<Rational>& deltas) {
  const auto& model = action.model();
  const std::size_t n = action.size();
  for (std::size_t b = a + 1; b < n; ++b) {
    Rational best = model.distance(a, static_cast<int>(b));
    for (const auto& e : elements) {
      const Rational d = model.distance(e[a], e[b]);
      if (d < best) best = d;
    }
    deltas[pair_index(n, a, b)] = best;
  }
}

DistalityResult summarize(const CantorAction& action, std::size_t elements, std::vector<Rational> deltas) {
  DistalityResult res;
  res.method = "enumeration";
  res.elements = elements;
  const std::size_t n = action.size();
  bool first = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Rational& d = deltas[pair_index(n, a, b)];
      if (first || d < res.min_delta) {
        res.min_delta = d;
        res.worst_a = static_cast<int>(a);
        res.worst_b = static_cast<int>(b);
        first = false;
      }
    }
  res.distal = first || Rational(0) < res.min_delta;
  res.deltas = std::move(deltas);
  return res;
}

}  // namespace

DistalityResult distality_pairwise_serial(const CantorAction& action,
                                          const std::vector<std::vector<int>>& elements) {
  const std::size_t n = action.size();
  std::vector<Rational> deltas(n * (n - 1) / 2);
  for (int a = 0; a < static_cast<int>(n); ++a) distality_row(action, elements, a, deltas);
  return summarize(action, elements.size(), std::move(deltas));
}

DistalityResult distality_pairwise(const CantorAction& action,
                                   const std::vector<std::vector<int>>& elements) {
  const int n = static_cast<int>(action.size());
  std::vector<Rational> deltas(static_cast<std::size_t>(n) * (n - 1) / 2);
#pragma omp parallel for schedule(dynamic, 8)
  for (int a = 0; a < n; ++a) distality_row(action, elements, a, deltas);
  return summarize(action, elements.size(), std::move(deltas));
}

}  // namespace solenoid::kernels
