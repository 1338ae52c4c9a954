// Search a polynomial lattice rule by fast CBC, write it in the lattice
// format, then estimate an integral with LMS+shift replicates.

#include <cmath>
#include <cstdio>

#include "qmcforge/qmcforge.hpp"

int main() {
  using namespace qmcforge;

  SearchSpec spec;
  spec.construction = Construction::Polynomial;
  spec.k = 10;
  spec.s = 3;
  spec.method = ExplorationMethod::fastCbc();
  spec.fom.family = FomFamily::PalphaTilde;
  spec.fom.alpha = 2;
  spec.fom.weights = WeightSpec::product({0.7, 0.2, 0.5});

  const SearchResult result = runSearch(spec);
  std::printf("merit %.10g after %llu evaluations\n", result.merit.total,
              static_cast<unsigned long long>(result.evaluations));
  std::printf("%s", emitLatticeFile(result.best).c_str());

  const TestIntegrand f = TestIntegrand::prodLinear({0.7, 0.2, 0.5});
  const int m = 50;
  double sum = 0.0, sumSq = 0.0;
  for (int r = 0; r < m; ++r) {
    const auto points = generateStream(RandomizedPointSet{result.best, {Randomization::Tag::LmsPlusShift, 2024}, static_cast<std::uint64_t>(r)});
    double avg = 0.0;
    for (const auto& p : points) avg += f(p);
    avg /= static_cast<double>(points.size());
    sum += avg;
    sumSq += avg * avg;
  }
  const double mean = sum / m;
  const double var = (sumSq - m * mean * mean) / (m - 1);
  std::printf("estimate %.12f (exact 1), standard error %.3g\n", mean, std::sqrt(var / m));
  return 0;
}
