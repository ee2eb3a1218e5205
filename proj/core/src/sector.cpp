#include "pucci/sector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "linear_solver.hpp"
#include "pucci/error.hpp"
#include "pucci/parallel.hpp"

namespace pucci::sector {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int N) {
  if (N >= 4) throw Error(ErrorCode::Unsupported, "sectors are implemented for N = 2 and N = 3 only");
  if (N < 2) throw Error(ErrorCode::InvalidParameters, "sector dimension must be at least 2");
}

}  // namespace

double quarter_sphere_measure(int N) {
  check_dimension(N);
  return N == 2 ? kPi / 2.0 : kPi;
}

double trimmed_margin(int N, double delta) {
  const double total = quarter_sphere_measure(N);
  if (!(delta > 0.0 && delta < total)) {
    throw Error(ErrorCode::InvalidParameters, "delta must lie in (0, " + std::to_string(total) + ")");
  }
  if (N == 2) return delta / 2.0;
  // removed measure pi - (pi - 4x) cos x is increasing on [0, pi/4]
  double lo = 0.0;
  double hi = kPi / 4.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kPi - (kPi - 4.0 * mid) * std::cos(mid) < delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SectorMesh SectorMesh::build(int N, double delta, double spacing) {
  check_dimension(N);
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error(ErrorCode::InvalidParameters, "spacing must be positive");
  SectorMesh m;
  m.N = N;
  m.delta = delta;
  m.margin = trimmed_margin(N, delta);
  m.lo = {m.margin, -kPi / 2.0 + m.margin};
  m.hi = {kPi / 2.0 - m.margin, kPi / 2.0 - m.margin};
  for (int k = 0; k < m.dims(); ++k) {
    const double len = m.hi[k] - m.lo[k];
    m.intervals[k] = std::max(4, static_cast<int>(std::ceil(len / spacing - 1e-9)));
    m.step[k] = len / m.intervals[k];
  }
  if (N == 2) {
    m.lo[1] = m.hi[1] = 0.0;
    m.intervals[1] = 0;
    m.step[1] = 0.0;
  }
  return m;
}

double SectorMesh::spacing() const noexcept { return std::max(step[0], step[1]); }

std::size_t SectorMesh::node_count() const noexcept {
  return static_cast<std::size_t>(intervals[0] + 1) * static_cast<std::size_t>(N == 3 ? intervals[1] + 1 : 1);
}

std::size_t SectorMesh::unknown_count() const noexcept {
  return static_cast<std::size_t>(intervals[0] - 1) * static_cast<std::size_t>(N == 3 ? intervals[1] - 1 : 1);
}

bool SectorMesh::on_boundary(int i1, int i2) const noexcept {
  if (i1 == 0 || i1 == intervals[0]) return true;
  return N == 3 && (i2 == 0 || i2 == intervals[1]);
}

void SectorOperatorParams::validate() const {
  if (!(a > 0.0) || !(a <= A) || !std::isfinite(A)) throw Error(ErrorCode::InvalidParameters, "need 0 < a <= A");
  if (!(gamma >= 2.0) || !std::isfinite(gamma)) throw Error(ErrorCode::InvalidParameters, "need gamma >= 2");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::InvalidParameters, "need epsilon >= 0");
}

namespace {

struct Locator {
  int index;
  double frac;
};

Locator locate(const SectorMesh& mesh, int k, double theta) {
  constexpr double slack = 1e-12;
  if (!(theta >= mesh.lo[k] - slack && theta <= mesh.hi[k] + slack)) {
    throw Error(ErrorCode::OutOfDomain, "angle " + std::to_string(theta) + " outside the sector box");
  }
  const double g = (theta - mesh.lo[k]) / mesh.step[k];
  const int i = std::clamp(static_cast<int>(std::floor(g)), 0, mesh.intervals[k] - 1);
  return {i, g - i};
}

// Node value continued by odd reflection across the zero boundary.
double odd_value(const SectorMesh& mesh, const SectorField& f, int i1, int i2) {
  double sign = 1.0;
  const int n1 = mesh.intervals[0];
  if (i1 < 0) {
    i1 = -i1;
    sign = -sign;
  } else if (i1 > n1) {
    i1 = 2 * n1 - i1;
    sign = -sign;
  }
  if (mesh.N == 3) {
    const int n2 = mesh.intervals[1];
    if (i2 < 0) {
      i2 = -i2;
      sign = -sign;
    } else if (i2 > n2) {
      i2 = 2 * n2 - i2;
      sign = -sign;
    }
  }
  return sign * f.values[mesh.node_index(i1, i2)];
}

std::array<double, 4> catmull_rom(double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return {0.5 * (-s3 + 2.0 * s2 - s), 0.5 * (3.0 * s3 - 5.0 * s2 + 2.0), 0.5 * (-3.0 * s3 + 4.0 * s2 + s),
          0.5 * (s3 - s2)};
}

}  // namespace

double SectorField::bilinear(const SectorMesh& mesh, std::span<const double> theta) const {
  const Locator l1 = locate(mesh, 0, theta[0]);
  if (mesh.N == 2) {
    return (1.0 - l1.frac) * values[mesh.node_index(l1.index, 0)] + l1.frac * values[mesh.node_index(l1.index + 1, 0)];
  }
  const Locator l2 = locate(mesh, 1, theta[1]);
  const double s = l1.frac;
  const double t = l2.frac;
  return (1.0 - s) * (1.0 - t) * values[mesh.node_index(l1.index, l2.index)] +
         s * (1.0 - t) * values[mesh.node_index(l1.index + 1, l2.index)] +
         (1.0 - s) * t * values[mesh.node_index(l1.index, l2.index + 1)] +
         s * t * values[mesh.node_index(l1.index + 1, l2.index + 1)];
}

double SectorField::cubic(const SectorMesh& mesh, std::span<const double> theta) const {
  const Locator l1 = locate(mesh, 0, theta[0]);
  const auto w1 = catmull_rom(l1.frac);
  if (mesh.N == 2) {
    double v = 0.0;
    for (int a = 0; a < 4; ++a) v += w1[static_cast<std::size_t>(a)] * odd_value(mesh, *this, l1.index - 1 + a, 0);
    return v;
  }
  const Locator l2 = locate(mesh, 1, theta[1]);
  const auto w2 = catmull_rom(l2.frac);
  double v = 0.0;
  for (int b = 0; b < 4; ++b) {
    double row = 0.0;
    for (int a = 0; a < 4; ++a) {
      row += w1[static_cast<std::size_t>(a)] * odd_value(mesh, *this, l1.index - 1 + a, l2.index - 1 + b);
    }
    v += w2[static_cast<std::size_t>(b)] * row;
  }
  return v;
}

NodeCoefficients node_coefficients(int N, std::span<const double> theta) {
  check_dimension(N);
  if (!(theta[0] > 0.0 && theta[0] < kPi / 2.0)) {
    throw Error(ErrorCode::CoefficientBlowup, "theta_1 outside (0, pi/2)");
  }
  NodeCoefficients c;
  if (N == 3) {
    if (!(theta[1] > -kPi / 2.0 && theta[1] < kPi / 2.0)) {
      throw Error(ErrorCode::CoefficientBlowup, "theta_2 outside (-pi/2, pi/2)");
    }
    c.q[0] = 1.0 / std::cos(theta[1]);
    c.connection[1] = std::tan(theta[1]);
  }
  return c;
}

std::vector<NodeCoefficients> coefficients(const SectorMesh& mesh) {
  std::vector<NodeCoefficients> out(mesh.node_count());
  const int n2 = mesh.N == 3 ? mesh.intervals[1] : 0;
  for (int i2 = 0; i2 <= n2; ++i2) {
    for (int i1 = 0; i1 <= mesh.intervals[0]; ++i1) {
      const auto th = mesh.theta(i1, i2);
      out[mesh.node_index(i1, i2)] = node_coefficients(mesh.N, th);
    }
  }
  return out;
}

namespace {

// Centered differences of psi at an interior node.
struct Derivatives {
  std::array<double, 2> d1{};
  double d11 = 0.0;
  double d22 = 0.0;
  double d12 = 0.0;
};

Derivatives differences(const SectorMesh& mesh, const std::vector<double>& v, int i1, int i2) {
  auto at = [&](int a, int b) { return v[mesh.node_index(i1 + a, i2 + b)]; };
  const double s1 = mesh.step[0];
  Derivatives d;
  const double c = at(0, 0);
  d.d1[0] = (at(1, 0) - at(-1, 0)) / (2.0 * s1);
  d.d11 = (at(1, 0) - 2.0 * c + at(-1, 0)) / (s1 * s1);
  if (mesh.N == 3) {
    const double s2 = mesh.step[1];
    d.d1[1] = (at(0, 1) - at(0, -1)) / (2.0 * s2);
    d.d22 = (at(0, 1) - 2.0 * c + at(0, -1)) / (s2 * s2);
    d.d12 = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * s1 * s2);
  }
  return d;
}

double sign_of(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// Linear row of the active policy: coefficients on the 3x3 neighborhood,
// index (b+1)*3 + (a+1) for offset (a, b).
using Row = std::array<double, 9>;

Row policy_row(const SectorOperatorParams& prm, const SectorMesh& mesh, const NodeCoefficients& nc,
               const Derivatives& d) {
  const int dims = mesh.dims();
  // weights of M^- on the eigenvalues of G D^2 psi G
  std::array<double, 3> lam{};  // (11, 22, 12) entries of the weight matrix
  if (prm.a == prm.A) {
    lam = {prm.A, prm.A, 0.0};
  } else if (dims == 1) {
    const double c11 = nc.q[0] * nc.q[0] * d.d11;
    lam[0] = extremal_weight(Variant::Minus, prm.a, prm.A, c11);
  } else {
    const double q1 = nc.q[0];
    const double q2 = nc.q[1];
    const SymMatrix C(2, {q1 * q1 * d.d11, q1 * q2 * d.d12, q2 * q2 * d.d22});
    const EigenDecomp e = eigen_sym(C);
    for (std::size_t k = 0; k < 2; ++k) {
      const double w = extremal_weight(Variant::Minus, prm.a, prm.A, e.eigenvalues[k]);
      lam[0] += w * e.vector(k, 0) * e.vector(k, 0);
      lam[1] += w * e.vector(k, 1) * e.vector(k, 1);
      lam[2] += w * e.vector(k, 0) * e.vector(k, 1);
    }
  }
  std::array<double, 2> b{};
  for (int i = 0; i < dims; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double q = nc.q[k];
    b[k] = (prm.a - prm.A) * sign_of(d.d1[k]) * (prm.gamma * q + q * q);
    if (nc.connection[k] != 0.0) {
      const double mu = -d.d1[k] * nc.connection[k];
      b[k] -= extremal_weight(Variant::Minus, prm.a, prm.A, mu) * nc.connection[k];
    }
  }

  Row row{};
  auto add = [&](int a, int bb, double w) { row[static_cast<std::size_t>((bb + 1) * 3 + (a + 1))] += w; };
  const double s1 = mesh.step[0];
  const double c11 = lam[0] * nc.q[0] * nc.q[0] / (s1 * s1);
  add(1, 0, c11 + b[0] / (2.0 * s1));
  add(-1, 0, c11 - b[0] / (2.0 * s1));
  add(0, 0, -2.0 * c11);
  if (dims == 2) {
    const double s2 = mesh.step[1];
    const double c22 = lam[1] * nc.q[1] * nc.q[1] / (s2 * s2);
    add(0, 1, c22 + b[1] / (2.0 * s2));
    add(0, -1, c22 - b[1] / (2.0 * s2));
    add(0, 0, -2.0 * c22);
    const double c12 = 2.0 * lam[2] * nc.q[0] * nc.q[1] / (4.0 * s1 * s2);
    if (c12 != 0.0) {
      add(1, 1, c12);
      add(-1, -1, c12);
      add(1, -1, -c12);
      add(-1, 1, -c12);
    }
  }
  return row;
}

struct Unknowns {
  std::vector<std::int32_t> node;      // unknown -> node
  std::vector<std::int32_t> unknown;   // node -> unknown or -1
  std::vector<std::array<int, 2>> ij;  // unknown -> (i1, i2)
};

Unknowns enumerate(const SectorMesh& mesh) {
  Unknowns u;
  u.unknown.assign(mesh.node_count(), -1);
  const int n2 = mesh.N == 3 ? mesh.intervals[1] : 0;
  for (int i2 = 0; i2 <= n2; ++i2) {
    for (int i1 = 0; i1 <= mesh.intervals[0]; ++i1) {
      if (mesh.on_boundary(i1, i2)) continue;
      const auto node = mesh.node_index(i1, i2);
      u.unknown[node] = static_cast<std::int32_t>(u.node.size());
      u.node.push_back(static_cast<std::int32_t>(node));
      u.ij.push_back({i1, i2});
    }
  }
  return u;
}

class PolicySolver {
 public:
  PolicySolver(const SectorOperatorParams& prm, const SectorMesh& mesh)
      : prm_(prm), mesh_(mesh), coeffs_(coefficients(mesh)), unk_(enumerate(mesh)), rows_(unk_.node.size()) {}

  std::size_t size() const noexcept { return unk_.node.size(); }
  const Unknowns& unknowns() const noexcept { return unk_; }

  // Solves H(psi) + rhs = 0 in place; psi and rhs live on the full node grid.
  void solve(std::vector<double>& psi, const std::vector<double>& rhs, int max_iterations) {
    const std::size_t n = size();
    const int nx = mesh_.intervals[0] + 1;
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    std::vector<double> history;
    bool solved = false;
    for (int it = 0; it <= max_iterations; ++it) {
      parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
          const auto [i1, i2] = unk_.ij[u];
          const auto node = static_cast<std::size_t>(unk_.node[u]);
          rows_[u] = policy_row(prm_, mesh_, coeffs_[node], differences(mesh_, psi, i1, i2));
        }
      });
      // psi already solves the system of an unchanged policy exactly
      if (solved && rows_ == solved_rows_) return;
      double res = 0.0;
      double scale = 1.0;
      double norm = 0.0;
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(n * (mesh_.N == 3 ? 9 : 3));
      for (std::size_t u = 0; u < n; ++u) {
        const auto node = static_cast<std::size_t>(unk_.node[u]);
        double value = rhs[node];
        double row_norm = 0.0;
        for (int bb = -1; bb <= 1; ++bb) {
          for (int a = -1; a <= 1; ++a) {
            const double w = rows_[u][static_cast<std::size_t>((bb + 1) * 3 + (a + 1))];
            if (w == 0.0) continue;
            const auto nb = static_cast<std::size_t>(static_cast<long>(node) + a + static_cast<long>(bb) * nx);
            value += w * psi[nb];
            row_norm += std::abs(w);
            const std::int32_t col = unk_.unknown[nb];
            if (col >= 0) trip.emplace_back(static_cast<int>(u), col, w);
          }
        }
        res = std::max(res, std::abs(value));
        norm = std::max(norm, row_norm);
        scale = std::max(scale, std::abs(psi[node]));
        b[static_cast<Eigen::Index>(u)] = -rhs[node];
      }
      history.push_back(res);
      if (res <= 1e-13 * norm * scale) return;
      if (it == max_iterations) break;
      Linear::Matrix mat(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      mat.setFromTriplets(trip.begin(), trip.end());
      Eigen::VectorXd x;
      if (!linear_.solve(std::move(mat), b, x)) {
        throw Error(ErrorCode::IterationLimit, "sector policy matrix is singular", std::move(history));
      }
      for (std::size_t u = 0; u < n; ++u) psi[static_cast<std::size_t>(unk_.node[u])] = x[static_cast<Eigen::Index>(u)];
      solved_rows_ = rows_;
      solved = true;
    }
    throw Error(ErrorCode::IterationLimit, "sector policy iteration did not settle", std::move(history));
  }

 private:
  using Linear = detail::PolicyLinearSolver;

  SectorOperatorParams prm_;
  const SectorMesh& mesh_;
  std::vector<NodeCoefficients> coeffs_;
  Unknowns unk_;
  std::vector<Row> rows_;
  std::vector<Row> solved_rows_;
  Linear linear_;
};

}  // namespace

SectorField assemble_H(const SectorOperatorParams& params, const SectorMesh& mesh, const SectorField& psi) {
  params.validate();
  if (psi.values.size() != mesh.node_count()) throw Error(ErrorCode::InvalidParameters, "field does not match mesh");
  const auto coeffs = coefficients(mesh);
  const Unknowns unk = enumerate(mesh);
  const PucciParams minus{params.a, params.A, Variant::Minus, 0.0};
  SectorField out;
  out.values.assign(mesh.node_count(), 0.0);
  parallel_for(unk.node.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      const auto [i1, i2] = unk.ij[u];
      const auto node = static_cast<std::size_t>(unk.node[u]);
      const NodeCoefficients& nc = coeffs[node];
      const Derivatives d = differences(mesh, psi.values, i1, i2);
      double h = 0.0;
      if (mesh.dims() == 1) {
        h = pucci(minus, SymMatrix(1, {nc.q[0] * nc.q[0] * d.d11}));
      } else {
        h = pucci(minus, SymMatrix(2, {nc.q[0] * nc.q[0] * d.d11, nc.q[0] * nc.q[1] * d.d12, nc.q[1] * nc.q[1] * d.d22}));
      }
      for (int i = 0; i < mesh.dims(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double q = nc.q[k];
        h += (params.a - params.A) * std::abs(d.d1[k]) * (params.gamma * q + q * q);
        const double mu = -d.d1[k] * nc.connection[k];
        h += std::min(params.a * mu, params.A * mu);
      }
      out.values[node] = h;
    }
  });
  return out;
}

SectorEigenResult sector_principal_eigenvalue(const SectorOperatorParams& params, const SectorMesh& mesh,
                                              const SectorEigenOptions& options) {
  params.validate();
  PolicySolver solver(params, mesh);
  const auto& unk = solver.unknowns();

  std::vector<double> phi(mesh.node_count(), 0.0);
  for (const auto node : unk.node) phi[static_cast<std::size_t>(node)] = 1.0;
  std::vector<double> psi = phi;

  SectorEigenResult out;
  double lambda_prev = 0.0;
  for (int k = 0; k <= options.max_iterations; ++k) {
    solver.solve(psi, phi, options.max_policy_iterations);
    double mx = -HUGE_VAL;
    double mn = HUGE_VAL;
    for (const auto node : unk.node) {
      mx = std::max(mx, psi[static_cast<std::size_t>(node)]);
      mn = std::min(mn, psi[static_cast<std::size_t>(node)]);
    }
    if (!(mx > 0.0) || mn / mx < -1e-12) {
      throw Error(ErrorCode::PositivityLoss, "sector iterate lost positivity", out.history);
    }
    const double lambda = 1.0 / mx;
    for (double& v : psi) v /= mx;
    phi = psi;
    // warm start for the next solve
    for (double& v : psi) v /= lambda;
    if (k > 0) {
      out.history.push_back(lambda);
      out.iterations = k;
      if (std::abs(lambda - lambda_prev) <= options.tolerance * lambda) {
        out.lambda = lambda;
        out.psi.values = std::move(phi);
        return out;
      }
    }
    lambda_prev = lambda;
  }
  throw Error(ErrorCode::IterationLimit, "sector inverse iteration did not converge", out.history);
}

double richardson_extrapolate(double at_d, double at_half, double at_quarter) {
  return at_d / 3.0 - 2.0 * at_half + 8.0 / 3.0 * at_quarter;
}

ExtrapolatedEigenvalue extrapolated_eigenvalue(const SectorOperatorParams& params, int N, double delta, double spacing,
                                               const SectorEigenOptions& options) {
  ExtrapolatedEigenvalue out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.deltas[k] = delta / static_cast<double>(1 << k);
    const SectorMesh mesh = SectorMesh::build(N, out.deltas[k], spacing);
    out.lambdas[k] = sector_principal_eigenvalue(params, mesh, options).lambda;
  }
  out.lambda0 = richardson_extrapolate(out.lambdas[0], out.lambdas[1], out.lambdas[2]);
  return out;
}

double exponent_root(double a, int N, double value) {
  const double b = N - 2.0;
  return 0.5 * (-b + std::sqrt(b * b + 4.0 * value / a));
}

GammaResult gamma_exponent(double a, double A, double epsilon, double delta, int N, const GammaOptions& options) {
  SectorOperatorParams prm{a, A, 2.0, epsilon};
  prm.validate();
  if (!(options.damping > 0.0 && options.damping <= 1.0)) throw Error(ErrorCode::InvalidParameters, "damping in (0, 1]");
  const double spacing = options.spacing > 0.0 ? options.spacing : kPi / 400.0;
  GammaResult out;
  out.mesh = SectorMesh::build(N, delta, spacing);
  SectorEigenOptions eo;
  eo.tolerance = options.eigen_tolerance;

  double gamma = 2.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    prm.gamma = gamma;
    const double lambda = sector_principal_eigenvalue(prm, out.mesh, eo).lambda;
    const double target = std::max(2.0, exponent_root(a, N, epsilon + lambda));
    const double next = (1.0 - options.damping) * gamma + options.damping * target;
    out.history.push_back(next);
    out.iterations = it;
    const bool done = std::abs(next - gamma) <= options.tolerance;
    gamma = next;
    if (done) {
      prm.gamma = gamma;
      SectorEigenResult fin = sector_principal_eigenvalue(prm, out.mesh, eo);
      out.gamma = gamma;
      out.lambda_bar = fin.lambda;
      out.psi = std::move(fin.psi);
      out.residual = a * gamma * (gamma + N - 2.0) - fin.lambda - epsilon;
      return out;
    }
  }
  throw Error(ErrorCode::IterationLimit, "exponent fixed point did not converge", out.history);
}

std::array<double, 3> to_cartesian(int N, double r, std::span<const double> theta) {
  if (N == 2) return {r * std::cos(theta[0]), r * std::sin(theta[0]), 0.0};
  const double c2 = std::cos(theta[1]);
  return {r * c2 * std::cos(theta[0]), r * c2 * std::sin(theta[0]), r * std::sin(theta[1])};
}

std::array<double, 2> to_angles(int N, std::span<const double> x) {
  if (N == 2) return {std::atan2(x[1], x[0]), 0.0};
  return {std::atan2(x[1], x[0]), std::atan2(x[2], std::hypot(x[0], x[1]))};
}

BarrierValue barrier_eval(double gamma, const SectorMesh& mesh, const SectorField& psi, double r,
                          std::span<const double> theta) {
  if (!(r > 0.0)) throw Error(ErrorCode::OutOfDomain, "barrier radius must be positive");
  const double v = psi.bilinear(mesh, theta);
  const NodeCoefficients nc = node_coefficients(mesh.N, theta);
  double tangential = 0.0;
  for (int k = 0; k < mesh.dims(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double eps = 1e-3 * mesh.step[kk];
    std::array<double, 2> up{theta[0], mesh.N == 3 ? theta[1] : 0.0};
    std::array<double, 2> dn = up;
    up[kk] = std::min(up[kk] + eps, mesh.hi[kk]);
    dn[kk] = std::max(dn[kk] - eps, mesh.lo[kk]);
    const double dpsi = (psi.cubic(mesh, up) - psi.cubic(mesh, dn)) / (up[kk] - dn[kk]);
    tangential += (nc.q[kk] * dpsi) * (nc.q[kk] * dpsi);
  }
  BarrierValue out;
  out.w = std::pow(r, gamma) * v;
  out.grad_norm = std::pow(r, gamma - 1.0) * std::sqrt(gamma * gamma * v * v + tangential);
  return out;
}

BarrierCheck barrier_inequality_check(const SectorOperatorParams& params, const SectorMesh& mesh,
                                      const SectorField& psi, int samples, std::uint64_t seed) {
  params.validate();
  const int N = mesh.N;
  const PucciParams minus{params.a, params.A, Variant::Minus, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::array<std::uniform_real_distribution<double>, 2> angle;
  for (int k = 0; k < mesh.dims(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    angle[kk] = std::uniform_real_distribution<double>(mesh.lo[kk] + 3.0 * mesh.step[kk], mesh.hi[kk] - 3.0 * mesh.step[kk]);
  }
  auto w = [&](const std::array<double, 3>& x) {
    const auto th = to_angles(N, x);
    const double rr = N == 2 ? std::hypot(x[0], x[1]) : std::hypot(x[0], x[1], x[2]);
    return std::pow(rr, params.gamma) * psi.cubic(mesh, th);
  };

  BarrierCheck out;
  out.samples = samples;
  out.tolerance = 10.0 * mesh.spacing();
  out.min_margin = HUGE_VAL;
  for (int s = 0; s < samples; ++s) {
    const double r = radius(rng);
    std::array<double, 2> th{angle[0](rng), N == 3 ? angle[1](rng) : 0.0};
    const auto x = to_cartesian(N, r, th);
    // angular displacement of the stencil stays below one mesh step
    const double eta = r * mesh.spacing() * (N == 3 ? std::cos(th[1]) : 1.0) * 0.5;
    SymMatrix H(static_cast<std::size_t>(N));
    const double w0 = w(x);
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        auto shifted = [&](double si, double sj) {
          auto y = x;
          y[static_cast<std::size_t>(i)] += si * eta;
          y[static_cast<std::size_t>(j)] += sj * eta;
          return w(y);
        };
        double v = 0.0;
        if (i == j) {
          // both half shifts land on the same coordinate
          v = (shifted(0.5, 0.5) - 2.0 * w0 + shifted(-0.5, -0.5)) / (eta * eta);
        } else {
          v = (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4.0 * eta * eta);
        }
        H.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
      }
    }
    const double margin = (pucci(minus, H) - params.epsilon * w0 / (r * r)) / std::pow(r, params.gamma - 2.0);
    out.min_margin = std::min(out.min_margin, margin);
  }
  out.pass = out.min_margin >= -out.tolerance;
  return out;
}

}  // namespace pucci::sector
