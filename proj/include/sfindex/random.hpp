#pragma once

#include <cstdint>
#include <random>

#include "sfindex/linalg.hpp"

namespace sfindex {

/// Seeded generator for reproducible test inputs. Normal deviates come from
/// Box-Muller on 53-bit uniforms so streams do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();
  cplx complex_normal();  // E|z|^2 = 1
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Matrix random_complex(Rng& rng, Index rows, Index cols);
/// Complex normal entries, symmetrized, scaled to unit spectral radius.
HermitianOperator random_hermitian(Rng& rng, Index n);
/// exp(i H) for a random Hermitian H; `spread` scales H before exponentiating.
Matrix random_unitary(Rng& rng, Index n, double spread = 3.14159265358979323846);
/// G G^dagger normalized to unit norm.
Matrix random_psd(Rng& rng, Index n);

}  // namespace sfindex
