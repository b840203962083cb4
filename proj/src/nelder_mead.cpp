#include "ehmi/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ehmi {

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const SimplexOptions& opt) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  for (std::size_t i = 0; i <= n; ++i) val[i] = f(pts[i]);

  // Gao-Han adaptive coefficients; they revert to the classic values in
  // low dimension and temper expansion/shrink as n grows.
  const double nd = static_cast<double>(std::max<std::size_t>(n, 2));
  const double expand = 1.0 + 2.0 / nd;
  const double contract = 0.75 - 0.5 / nd;
  const double shrink = 1.0 - 1.0 / nd;

  std::vector<std::size_t> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  const auto sort_order = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return val[l] < val[r]; });
  };
  sort_order();

  SimplexResult res;
  int iter = 0;
  bool flat = false;
  for (; iter < opt.max_iter; ++iter) {
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    if (val[worst] - val[best] <= opt.tol * (1.0 + std::fabs(val[best]))) {
      flat = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double w) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + w * (pts[worst][k] - centroid[k]);
      return x;
    };

    auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < val[best]) {
      auto expanded = blend(-expand);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = std::move(expanded);
        val[worst] = fe;
      } else {
        pts[worst] = std::move(reflected);
        val[worst] = fr;
      }
    } else if (fr < val[second]) {
      pts[worst] = std::move(reflected);
      val[worst] = fr;
    } else {
      const bool outside = fr < val[worst];
      auto contracted = blend(outside ? -contract : contract);
      const double fc = f(contracted);
      if (fc < std::min(fr, val[worst])) {
        pts[worst] = std::move(contracted);
        val[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k)
            pts[i][k] = pts[best][k] + shrink * (pts[i][k] - pts[best][k]);
          val[i] = f(pts[i]);
        }
      }
    }
    sort_order();
  }

  res.x = pts[order[0]];
  res.value = val[order[0]];
  res.iterations = iter;
  res.converged = flat;
  return res;
}

}  // namespace ehmi
