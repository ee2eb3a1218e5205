#include <random>

#include <benchmark/benchmark.h>

#include "pucci/grid_solver.hpp"
#include "pucci/operators.hpp"
#include "pucci/radial.hpp"
#include "pucci/sector.hpp"

using namespace pucci;

static void BM_EigenSym(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> upper(n * (n + 1) / 2);
  for (auto& x : upper) x = g(rng);
  const SymMatrix X(n, upper);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_sym(X));
}
BENCHMARK(BM_EigenSym)->Arg(2)->Arg(3)->Arg(8);

static void BM_Shoot(benchmark::State& state) {
  const PucciParams p{1.0, 1.5, Variant::Plus, 0.0};
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial::shoot(p, 2, radial::SourceSpec::eigen_power(5.0), 1.0, 2.0, h));
  }
}
BENCHMARK(BM_Shoot)->Arg(1000)->Arg(10000);

static void BM_DiscretizeF(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto dom = grid::build_domain(grid::Disk{1.0}, h);
  auto u = grid::zero_field(dom);
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    const auto x = dom.cell_position(c);
    u.values[static_cast<std::size_t>(dom.node_of_cell[c])] = 1.0 - x.dot(x) + 0.1 * x.x * x.y;
  }
  const PucciParams p{1.0, 2.0, Variant::Plus, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(grid::discretize_F(p, dom, u));
  state.counters["cells"] = static_cast<double>(dom.cell_count());
}
BENCHMARK(BM_DiscretizeF)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SolveDirichlet(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto dom = grid::build_domain(grid::Ellipse{1.5, 1.0}, h);
  const PucciParams p{1.0, 2.0, Variant::Minus, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grid::solve_dirichlet(p, dom, grid::Source::constant(1.0), grid::BoundaryData::constant(0.0)));
  }
  state.counters["cells"] = static_cast<double>(dom.cell_count());
}
BENCHMARK(BM_SolveDirichlet)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SectorEigen(benchmark::State& state) {
  const auto mesh = sector::SectorMesh::build(2, 0.2, 3.141592653589793 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sector::sector_principal_eigenvalue({0.9, 1.0, 2.0, 0.0}, mesh));
  }
}
BENCHMARK(BM_SectorEigen)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
