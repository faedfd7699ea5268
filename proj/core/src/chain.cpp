#include "spinchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "spinchain/errors.hpp"
#include "spinchain/spin_ops.hpp"

namespace spinchain {

namespace {

long env_long(const char* name, long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0) {
    throw InvalidSpec(std::string(name) + " must be a positive integer, got \"" + raw + "\"");
  }
  return value;
}

std::string format_coupling(double j) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", j);
  return buf;
}

}  // namespace

Budget env_budget() {
  Budget b;
  b.max_dimension = env_long("SPINCHAIN_MAX_DIM", b.max_dimension);
  b.max_vector_dimension = env_long("SPINCHAIN_MAX_VEC_DIM", b.max_vector_dimension);
  b.max_state_dimension = env_long("SPINCHAIN_MAX_STATE_DIM", b.max_state_dimension);
  b.max_twice_spin =
      static_cast<int>(env_long("SPINCHAIN_MAX_TWICE_SPIN", b.max_twice_spin));
  return b;
}

void ChainSpec::validate(const Budget& budget) const {
  if (sites < 2) {
    throw InvalidSpec("chain needs at least 2 sites, got " + std::to_string(sites));
  }
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw InvalidSpec("coupling J must be a positive finite number, got " +
                      format_coupling(coupling));
  }
  if (spin.twice() > budget.max_twice_spin) {
    throw InstanceTooLarge("spin s = " + spin.str() + " exceeds the configured cap 2s <= " +
                           std::to_string(budget.max_twice_spin));
  }
  dimension(budget);
}

long ChainSpec::dimension(const Budget& budget) const {
  const long d = spin.dimension();
  long total = 1;
  for (int i = 0; i < sites; ++i) {
    if (total > budget.max_dimension / d) {
      throw InstanceTooLarge("Hilbert space (2s+1)^L = " + std::to_string(d) + "^" +
                             std::to_string(sites) + " exceeds the dimension budget " +
                             std::to_string(budget.max_dimension));
    }
    total *= d;
  }
  return total;
}

std::vector<std::pair<int, int>> ChainSpec::bonds() const {
  std::vector<std::pair<int, int>> out;
  if (periodic) {
    out.reserve(static_cast<std::size_t>(sites));
    for (int i = 0; i < sites; ++i) out.emplace_back(i, (i + 1) % sites);
  } else {
    out.reserve(static_cast<std::size_t>(sites - 1));
    for (int i = 0; i + 1 < sites; ++i) out.emplace_back(i, i + 1);
  }
  return out;
}

std::string ChainSpec::key() const {
  return "2s" + std::to_string(spin.twice()) + "-L" + std::to_string(sites) + "-J" +
         format_coupling(coupling) + (periodic ? "-pbc" : "-obc");
}

SectorIndex SectorIndex::build(const ChainSpec& spec, const Budget& budget) {
  spec.validate(budget);
  const long dim = spec.dimension(budget);
  const int d = static_cast<int>(spec.spin.dimension());
  const int twice_s = spec.spin.twice();

  // twice_sz of basis index n: digits of n base d, site 0 most significant,
  // digit k meaning m = s - k at that site.
  std::map<int, std::vector<long>, std::greater<int>> buckets;
  for (long n = 0; n < dim; ++n) {
    long rest = n;
    int twice_sz = 0;
    for (int site = 0; site < spec.sites; ++site) {
      const int digit = static_cast<int>(rest % d);
      twice_sz += twice_s - 2 * digit;
      rest /= d;
    }
    buckets[twice_sz].push_back(n);
  }

  SectorIndex index;
  index.sectors_.reserve(buckets.size());
  for (auto& [twice_sz, basis] : buckets) {
    index.sectors_.push_back(Sector{twice_sz, std::move(basis)});
  }
  return index;
}

long SectorIndex::total_dimension() const {
  long total = 0;
  for (const auto& s : sectors_) total += static_cast<long>(s.basis.size());
  return total;
}

SparseMatrix build_hamiltonian(const ChainSpec& spec, const Budget& budget) {
  spec.validate(budget);
  const long dim = spec.dimension(budget);
  const long d = spec.spin.dimension();

  const SparseMatrix sz = sz_matrix(spec.spin);
  SparseMatrix sp_half = splus_matrix(spec.spin);
  sp_half *= 0.5;
  const SparseMatrix sm = sminus_matrix(spec.spin);
  const SparseMatrix eye = SparseMatrix::identity(d);

  // Embeds op_a at site a and op_b at site b (a < b) with identities
  // elsewhere, via left-to-right Kronecker products.
  const auto embed = [&](int a, const SparseMatrix& op_a, int b, const SparseMatrix& op_b) {
    SparseMatrix acc = SparseMatrix::identity(1);
    for (int site = 0; site < spec.sites; ++site) {
      const SparseMatrix& factor = site == a ? op_a : site == b ? op_b : eye;
      acc = kron(acc, factor);
    }
    return acc;
  };

  SparseMatrix h(dim, dim);
  for (const auto& [i, j] : spec.bonds()) {
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    h += embed(a, sz, b, sz);
    h += embed(a, sp_half, b, sm);
    h += embed(a, sm, b, sp_half);
  }
  h *= spec.coupling;
  h.compact();
  return h;
}

std::vector<SectorBlock> sector_split(const ChainSpec& spec, const SparseMatrix& h,
                                      const Budget& budget) {
  const SectorIndex index = SectorIndex::build(spec, budget);
  const long dim = spec.dimension(budget);
  if (h.rows() != dim || h.cols() != dim) {
    throw InvalidSpec("Hamiltonian shape " + std::to_string(h.rows()) + "x" +
                      std::to_string(h.cols()) + " does not match the chain dimension " +
                      std::to_string(dim));
  }

  // position of each basis index inside its sector, plus the sector id
  std::vector<long> local(static_cast<std::size_t>(dim), -1);
  std::vector<int> owner(static_cast<std::size_t>(dim), -1);
  const auto& sectors = index.sectors();
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const auto& basis = sectors[k].basis;
    for (std::size_t p = 0; p < basis.size(); ++p) {
      local[static_cast<std::size_t>(basis[p])] = static_cast<long>(p);
      owner[static_cast<std::size_t>(basis[p])] = static_cast<int>(k);
    }
  }

  std::vector<SectorBlock> blocks;
  blocks.reserve(sectors.size());
  for (const auto& s : sectors) {
    const long n = static_cast<long>(s.basis.size());
    blocks.push_back(SectorBlock{s.twice_sz, s.basis, Eigen::MatrixXd::Zero(n, n)});
  }

  for (const auto& e : h.entries()) {
    const int kr = owner[static_cast<std::size_t>(e.row)];
    const int kc = owner[static_cast<std::size_t>(e.col)];
    if (kr != kc) {
      throw std::logic_error("Hamiltonian entry (" + std::to_string(e.row) + "," +
                             std::to_string(e.col) + ") crosses total-Sz sectors");
    }
    blocks[static_cast<std::size_t>(kr)].matrix(local[static_cast<std::size_t>(e.row)],
                                                local[static_cast<std::size_t>(e.col)]) +=
        e.value;
  }
  return blocks;
}

}  // namespace spinchain
