#include "voa/optim.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>

#include "voa/numkit.hpp"

namespace voa {

namespace {

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

SimplexResult minimize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& start, const SimplexOptions& opts) {
  const std::size_t n = start.size();
  if (n == 0) throw StructuralError("minimize_simplex: empty start point");
  if (opts.max_iters < 0) throw StructuralError("minimize_simplex: negative budget");

  const double nd = static_cast<double>(n);
  const double refl = 1.0;
  const double expn = 1.0 + 2.0 / nd;
  const double ctr = 0.75 - 0.5 / nd;
  const double shrk = 1.0 - 1.0 / nd;

  std::vector<Vertex> simplex(n + 1);
  simplex[0].x = start;
  simplex[0].f = f(start);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1].x = start;
    simplex[i + 1].x[i] += opts.step;
    simplex[i + 1].f = f(simplex[i + 1].x);
  }

  auto order = [&]() {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  order();

  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    if (simplex.back().f - simplex.front().f <= opts.f_tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
    for (double& c : centroid) c /= nd;

    const Vertex& worst = simplex.back();
    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i)
        p[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
      return p;
    };

    std::vector<double> xr = blend(refl);
    double fr = f(xr);

    if (fr < simplex.front().f) {
      std::vector<double> xe = blend(expn);
      double fe = f(xe);
      if (fe < fr) {
        simplex.back() = {std::move(xe), fe};
      } else {
        simplex.back() = {std::move(xr), fr};
      }
    } else if (fr < simplex[n - 1].f) {
      simplex.back() = {std::move(xr), fr};
    } else if (fr < worst.f) {
      std::vector<double> xc = blend(ctr);
      double fc = f(xc);
      if (fc <= fr) {
        simplex.back() = {std::move(xc), fc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i)
            simplex[v].x[i] =
                simplex[0].x[i] + shrk * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v].f = f(simplex[v].x);
        }
      }
    } else {
      std::vector<double> xc = blend(-ctr);
      double fc = f(xc);
      if (fc < worst.f) {
        simplex.back() = {std::move(xc), fc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i)
            simplex[v].x[i] =
                simplex[0].x[i] + shrk * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v].f = f(simplex[v].x);
        }
      }
    }
    order();
  }

  SimplexResult out;
  out.x = simplex.front().x;
  out.value = simplex.front().f;
  out.iterations = iter;
  return out;
}

}  // namespace voa
