#include "spinchain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <utility>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

struct SectorResult {
  int twice_sz;
  std::vector<long> basis;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // empty when not requested
};

SectorResult solve_sector(SectorBlock block, bool need_vectors) {
  const auto options = need_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix, options);
  if (solver.info() != Eigen::Success) {
    throw EigensolverFailure("eigensolver did not converge in the total-Sz sector 2Sz = " +
                             std::to_string(block.twice_sz));
  }
  SectorResult out;
  out.twice_sz = block.twice_sz;
  out.basis = std::move(block.basis);
  out.values = solver.eigenvalues();
  if (need_vectors) out.vectors = solver.eigenvectors();
  return out;
}

}  // namespace

SpectralData diagonalize(const ChainSpec& spec, bool need_vectors, const Budget& budget) {
  spec.validate(budget);
  const long dim = spec.dimension(budget);
  if (need_vectors && dim > budget.max_vector_dimension) {
    throw InstanceTooLarge("eigenvector computation at dimension " + std::to_string(dim) +
                           " exceeds the vector budget " +
                           std::to_string(budget.max_vector_dimension));
  }

  const SparseMatrix h = build_hamiltonian(spec, budget);
  std::vector<SectorBlock> blocks = sector_split(spec, h, budget);

  std::vector<std::future<SectorResult>> jobs;
  jobs.reserve(blocks.size());
  for (auto& block : blocks) {
    jobs.push_back(std::async(std::launch::async, solve_sector, std::move(block),
                              need_vectors));
  }

  SpectralData sd;
  sd.spec = spec;
  sd.eigenvalues.reserve(static_cast<std::size_t>(dim));
  for (auto& job : jobs) {
    SectorResult r = job.get();
    for (Eigen::Index i = 0; i < r.values.size(); ++i) sd.eigenvalues.push_back(r.values[i]);
    if (need_vectors) {
      sd.sectors.push_back(SectorVectors{r.twice_sz, std::move(r.basis),
                                         std::move(r.values), std::move(r.vectors)});
    }
  }
  std::sort(sd.eigenvalues.begin(), sd.eigenvalues.end());
  return sd;
}

double ground_energy(const SpectralData& sd) {
  if (sd.eigenvalues.empty()) throw InvalidSpec("spectrum is empty");
  return sd.eigenvalues.front();
}

std::vector<DegeneracyLevel> degeneracies(const SpectralData& sd) {
  std::vector<DegeneracyLevel> levels;
  for (const double e : sd.eigenvalues) {
    const double tol = 1e-9 * std::max(1.0, std::abs(e));
    if (!levels.empty() && std::abs(e - levels.back().energy) <= tol) {
      ++levels.back().multiplicity;
    } else {
      levels.push_back(DegeneracyLevel{e, 1});
    }
  }
  return levels;
}

}  // namespace spinchain
