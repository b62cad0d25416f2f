#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bstlab/error.hpp"
#include "bstlab/reference_model.hpp"

namespace bstlab {

enum class FitModel { lgn, lglgn, lgk, rho_linear, rho_cubic };

inline std::string_view fit_model_name(FitModel m) {
  switch (m) {
    case FitModel::lgn: return "lgn";
    case FitModel::lglgn: return "lglgn";
    case FitModel::lgk: return "lgk";
    case FitModel::rho_linear: return "rho-linear";
    case FitModel::rho_cubic: return "rho-cubic";
  }
  return "?";
}

inline FitModel parse_fit_model(std::string_view s) {
  if (s == "lgn" || s == "linear_in_lgn") return FitModel::lgn;
  if (s == "lglgn" || s == "linear_in_lglgn") return FitModel::lglgn;
  if (s == "lgk" || s == "linear_in_lgk") return FitModel::lgk;
  if (s == "rho-linear" || s == "rho_linear") return FitModel::rho_linear;
  if (s == "rho-cubic" || s == "rho_cubic") return FitModel::rho_cubic;
  throw Error("bad-model", std::string(s));
}

// Number of coefficients reported for a model.
inline std::size_t fit_arity(FitModel m) {
  return m == FitModel::rho_cubic ? 4 : 2;
}

struct FitResult {
  FitModel model = FitModel::lgn;
  // lgn/lglgn/lgk: [intercept, slope]; rho-linear: [A, B] for
  // B - (B - A) rho(n); rho-cubic: [c0, c1, c2, c3].
  std::vector<double> coefficients;
  double residual_rms = 0;
  double r_squared = 0;
  std::size_t points = 0;
};

struct LinearFit {
  std::vector<double> beta;  // intercept first
  double residual_rms = 0;
  double r_squared = 0;
};

// Ordinary least squares with an intercept via the normal equations.
// Columns are scaled to unit max-norm and the system is solved in long
// double with partial pivoting; a (numerically) singular system is an error.
inline LinearFit least_squares(const std::vector<std::vector<double>>& columns,
                               const std::vector<double>& y) {
  const std::size_t n = y.size();
  const std::size_t p = columns.size() + 1;
  if (n < p) throw Error("degenerate-fit", "need at least " + std::to_string(p) + " points");
  for (const auto& col : columns) {
    if (col.size() != n) throw Error("degenerate-fit", "column length mismatch");
  }
  auto x = [&](std::size_t row, std::size_t j) -> long double {
    return j == 0 ? 1.0L : static_cast<long double>(columns[j - 1][row]);
  };
  std::vector<long double> scale(p, 1.0L);
  for (std::size_t j = 1; j < p; ++j) {
    long double mx = 0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::fabs(x(i, j)));
    if (mx == 0) throw Error("degenerate-fit", "all-zero regressor");
    scale[j] = mx;
  }
  // Augmented normal matrix [X'X | X'y] on scaled columns.
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < p; ++r) {
      const long double xr = x(i, r) / scale[r];
      for (std::size_t c = 0; c < p; ++c) a[r][c] += xr * x(i, c) / scale[c];
      a[r][p] += xr * static_cast<long double>(y[i]);
    }
  }
  long double diag = 0;
  for (std::size_t r = 0; r < p; ++r) diag = std::max(diag, std::fabs(a[r][r]));
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (std::fabs(a[piv][col]) <= 1e-15L * diag) throw Error("degenerate-fit", "singular system");
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  LinearFit out;
  out.beta.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    out.beta[j] = static_cast<double>(a[j][p] / a[j][j] / scale[j]);
  }
  long double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<long double>(n);
  long double ss_res = 0;
  long double ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double pred = 0;
    for (std::size_t j = 0; j < p; ++j) pred += static_cast<long double>(out.beta[j]) * x(i, j);
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  out.residual_rms = static_cast<double>(std::sqrt(ss_res / static_cast<long double>(n)));
  // Zero-variance targets count as perfectly explained.
  out.r_squared = ss_tot == 0 ? 1.0 : static_cast<double>(1.0L - ss_res / ss_tot);
  return out;
}

// Simple line y = b0 + b1 t.
inline LinearFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
  return least_squares({t}, y);
}

// Regressor columns of a model for raw x values (n, or k for lgk).
inline std::vector<std::vector<double>> fit_columns(FitModel m, const std::vector<double>& xs) {
  std::vector<double> c1;
  c1.reserve(xs.size());
  for (double x : xs) {
    switch (m) {
      case FitModel::lgn:
      case FitModel::lgk:
        if (x <= 0) throw Error("degenerate-fit", "lg needs x > 0");
        c1.push_back(std::log2(x));
        break;
      case FitModel::lglgn:
        if (x <= 1) throw Error("degenerate-fit", "lg lg needs x > 1");
        c1.push_back(std::log2(std::log2(x)));
        break;
      case FitModel::rho_linear:
      case FitModel::rho_cubic:
        if (x < 2) throw Error("degenerate-fit", "rho needs n >= 2");
        c1.push_back(rho(x));
        break;
    }
  }
  if (m != FitModel::rho_cubic) return {c1};
  std::vector<double> c2(c1.size());
  std::vector<double> c3(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    c2[i] = c1[i] * c1[i];
    c3[i] = c2[i] * c1[i];
  }
  return {c1, c2, c3};
}

inline FitResult fit(FitModel m, const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error("degenerate-fit", "x/y length mismatch");
  const LinearFit lf = least_squares(fit_columns(m, xs), ys);
  FitResult r;
  r.model = m;
  r.residual_rms = lf.residual_rms;
  r.r_squared = lf.r_squared;
  r.points = ys.size();
  if (m == FitModel::rho_linear) {
    // y = c0 + c1 rho  ==  B - (B - A) rho
    r.coefficients = {lf.beta[0] + lf.beta[1], lf.beta[0]};
  } else {
    r.coefficients = lf.beta;
  }
  return r;
}

inline double fit_predict(const FitResult& f, double x) {
  const auto cols = fit_columns(f.model, {x});
  if (f.model == FitModel::rho_linear) {
    const double a = f.coefficients.at(0);
    const double b = f.coefficients.at(1);
    return b - (b - a) * cols[0][0];
  }
  double y = f.coefficients.at(0);
  for (std::size_t j = 0; j < cols.size(); ++j) y += f.coefficients.at(j + 1) * cols[j][0];
  return y;
}

// JSON shape read by the plotting scripts.
inline nlohmann::json fit_to_json(const FitResult& f) {
  return {{"model", fit_model_name(f.model)},
          {"coefficients", f.coefficients},
          {"residual_rms", f.residual_rms},
          {"r_squared", f.r_squared},
          {"points", f.points}};
}

inline FitResult fit_from_json(const nlohmann::json& j) {
  try {
    FitResult f;
    f.model = parse_fit_model(j.at("model").get<std::string>());
    f.coefficients = j.at("coefficients").get<std::vector<double>>();
    f.residual_rms = j.at("residual_rms").get<double>();
    f.r_squared = j.at("r_squared").get<double>();
    f.points = j.value("points", std::size_t{0});
    if (f.coefficients.size() != fit_arity(f.model)) throw Error("bad-fit-json", "arity");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad-fit-json", e.what());
  }
}

}  // namespace bstlab
