#ifndef CORNERCUT_TEST_RANDOM_INSTANCES_HPP_
#define CORNERCUT_TEST_RANDOM_INSTANCES_HPP_

#include <random>
#include <vector>

#include "cornercut/instance.hpp"

namespace cornercut::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(gen_);
  }
  // num/den with |num| <= bound and 1 <= den <= bound
  Rational rational(long bound = 8) {
    return make_rational(uniform(-bound, bound), uniform(1, bound));
  }
  Vec2 vec(long bound = 8) { return {rational(bound), rational(bound)}; }
  Vec2 nonzero_vec(long bound = 8) {
    while (true) {
      Vec2 v = vec(bound);
      if (!v.is_zero()) return v;
    }
  }
  Vec2 integer_vec(long bound) {
    return Vec2(uniform(-bound, bound), uniform(-bound, bound));
  }
  Vec2 non_lattice_point(long bound = 8) {
    while (true) {
      Vec2 v = vec(bound);
      if (!v.is_integral()) return v;
    }
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Random instance whose rays positively span the plane.
inline CornerInstance random_instance(Rng& rng, std::size_t k,
                                      long bound = 8) {
  while (true) {
    Vec2 f = rng.non_lattice_point(bound);
    std::vector<Vec2> rays;
    for (std::size_t j = 0; j < k; ++j) rays.push_back(rng.nonzero_vec(bound));
    CornerInstance inst(f, rays);
    if (inst.spans_plane()) return inst;
  }
}

}  // namespace cornercut::testing

#endif  // CORNERCUT_TEST_RANDOM_INSTANCES_HPP_
