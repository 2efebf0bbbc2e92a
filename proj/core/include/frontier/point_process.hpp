#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "frontier/frontier_spec.hpp"

namespace frontier {

// Resolution of the estimators: h_n + 1 = 2^{h'} dyadic blocks, each made of
// d_n cells, so k_n = d_n (h_n + 1) cells I_{n,r} of width 1/k_n in total.
//
// Cells and blocks are indexed from 0 here (r = 0..k_n-1 corresponds to
// the usual r = 1..k_n). Points with x = 1 belong to the last cell.
class PartitionConfig {
 public:
  PartitionConfig(std::int64_t n, unsigned h_prime, std::uint64_t d_n);

  std::int64_t n() const noexcept { return n_; }
  unsigned h_prime() const noexcept { return h_prime_; }
  std::uint64_t h_n() const noexcept { return blocks() - 1; }
  std::uint64_t blocks() const noexcept { return std::uint64_t{1} << h_prime_; }
  std::uint64_t d_n() const noexcept { return d_n_; }
  std::uint64_t k_n() const noexcept { return d_n_ * blocks(); }

  std::size_t block_of(double x) const;
  std::size_t cell_of(double x) const;
  std::size_t block_of_cell(std::size_t r) const noexcept { return r / d_n_; }
  // x_r = (2r + 1) / (2 k_n) in 0-based indexing.
  double cell_center(std::size_t r) const noexcept;
  double cell_lo(std::size_t r) const noexcept;
  double cell_hi(std::size_t r) const noexcept;

  bool operator==(const PartitionConfig&) const = default;

 private:
  std::int64_t n_;
  unsigned h_prime_;
  std::uint64_t d_n_;
};

struct Point {
  double x;
  double y;
  bool operator==(const Point&) const = default;
};

// A realisation of N*^n (superposition of n unit processes of rate c)
// restricted to S. Points are sorted by x.
struct PointSample {
  std::vector<Point> points;
  std::int64_t n = 0;
  double c = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string frontier_label;
};

// Ground-truth cell quantities derived from f: λ_{n,r} = ∫_{I_r} f,
// m_{n,r} = inf_{I_r} f and M_{n,r} = sup_{I_r} f.
struct CellOracles {
  std::vector<double> lambda;
  std::vector<double> m_cell;
  std::vector<double> M_cell;
};

// Per-cell count, maximum X* and minimum Z* of the second coordinate
// (both 0 for an empty cell), plus the oracle quantities.
struct CellStats {
  std::vector<std::int64_t> count;
  std::vector<double> x_star;
  std::vector<double> z_star;
  std::vector<double> lambda;
  std::vector<double> m_cell;
  std::vector<double> M_cell;

  std::size_t size() const noexcept { return x_star.size(); }
};

double area(const FrontierSpec& f);

CellOracles cell_oracles(const FrontierSpec& f, const PartitionConfig& cfg);

// Poisson(n c λ(S)) points, uniform on S by rejection from [0,1] x [0, M].
// Deterministic in (seed, stream).
PointSample simulate(const FrontierSpec& f, std::int64_t n, double c, std::uint64_t seed,
                     std::uint64_t stream = 0);

// Same draws as simulate(), reduced straight to cell statistics without
// materialising the sample.
CellStats simulate_cell_stats(const FrontierSpec& f, double c, std::uint64_t seed,
                              std::uint64_t stream, const PartitionConfig& cfg,
                              const CellOracles& oracles);

CellStats cell_stats(const PointSample& sample, const PartitionConfig& cfg,
                     const CellOracles& oracles);
CellStats cell_stats(const PointSample& sample, const PartitionConfig& cfg, const FrontierSpec& f);

// CSV with a leading comment line carrying the generation parameters:
//   # frontier=<label> n=<n> c=<c> seed=<seed> stream=<stream>
//   x,y
//   <x>,<y>
// Doubles use the shortest round-trip representation.
void write_sample_csv(std::ostream& out, const PointSample& sample);
PointSample read_sample_csv(std::istream& in);

}  // namespace frontier
