#ifndef CORNERCUT_INSTANCE_HPP_
#define CORNERCUT_INSTANCE_HPP_

#include <string>
#include <vector>

#include "cornercut/hull2d.hpp"
#include "cornercut/vec2.hpp"

namespace cornercut {

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The point f and the rays r^1..r^k of the corner relaxation
// { s >= 0 : f + sum_j s_j r^j integral }.
struct CornerInstance {
  Vec2 f;
  std::vector<Vec2> rays;

  CornerInstance() = default;
  CornerInstance(Vec2 f_, std::vector<Vec2> rays_)
      : f(std::move(f_)), rays(std::move(rays_)) {
    validate();
  }

  std::size_t k() const { return rays.size(); }

  void validate() const {
    if (f.is_integral())
      throw PreconditionError("f must not be a lattice point");
    if (rays.empty()) throw PreconditionError("at least one ray is required");
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (rays[j].is_zero())
        throw PreconditionError("ray " + std::to_string(j + 1) + " is zero");
  }

  // True when the rays positively span the plane.
  bool spans_plane() const {
    std::vector<Vec2> pts = rays;
    pts.push_back(Vec2(0, 0));
    Polygon p = polygon_from_vrep(pts, {});
    return p.dimension == 2 && p.contains_strict(Vec2(0, 0));
  }

  // Preconditions shared by the blocking and facet machinery.
  void require_full(const char* what) const {
    if (rays.size() <= 2)
      throw PreconditionError(std::string(what) +
                              ": at least three rays are required");
    if (!spans_plane())
      throw PreconditionError(std::string(what) +
                              ": the rays must positively span the plane");
  }
};

}  // namespace cornercut

#endif  // CORNERCUT_INSTANCE_HPP_
