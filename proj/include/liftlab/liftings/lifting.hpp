#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/graded/calculus.hpp"
#include "liftlab/graded/operator.hpp"
#include "liftlab/json.hpp"

namespace liftlab {

enum class LiftingKind { Natural, Quasicontraction, LeftInvertible, ShiftedHost };
// Wire names: NATURAL_21, QUASICONTRACTION_25, LEFTINV_31, SHIFTED_HOST_37.
const char* to_string(LiftingKind k);
LiftingKind lifting_kind_from_string(const std::string& s);

// Intermediate quasi-isometric lifting Q on M that a left invertible lifting extends.
struct InnerLifting {
  GradedOperator q;
  Placement host;  // H inside M
  friend bool operator==(const InnerLifting&, const InnerLifting&) = default;
};

struct GramBlock {
  std::string name;
  GradedOperator block;  // Hermitian, on its own subspace
};

// Lifting S of T on K = (backbone of isometric fibers [0, isometric_dim)) + rest,
// with H placed at `embedding`. S is assembled from the named blocks, so the
// JSON form (kind, shapes, blocks, base, inner) determines S exactly.
class LiftingOperator {
 public:
  LiftingOperator() = default;
  LiftingOperator(LiftingKind kind, GradedOperator base, std::map<std::string, Matrix> blocks,
                  std::size_t window_grades, std::optional<InnerLifting> inner = {});

  LiftingKind kind() const { return kind_; }
  const LiftedSpaceShape& shape() const { return s_.in_shape(); }
  const LiftedSpaceShape& host() const { return base_.in_shape(); }
  Placement embedding() const { return embedding_; }
  const GradedOperator& base() const { return base_; }
  const GradedOperator& op() const { return s_; }
  const std::map<std::string, Matrix>& blocks() const { return blocks_; }
  const Matrix& block(const std::string& name) const;
  std::size_t window_grades() const { return window_grades_; }
  const std::optional<InnerLifting>& inner() const { return inner_; }
  // Fiber components [0, isometric_dim) form the backbone on which S is a shift.
  std::size_t isometric_dim() const { return isometric_dim_; }
  // No backbone was needed: S = T (or S = Q for the left invertible kind).
  bool degenerate() const { return degenerate_; }

  // The space whose span under S the lifting is minimal over: H, or M for the
  // left invertible kind.
  const LiftedSpaceShape& generator_space() const;
  Placement generator_embedding() const;

  GradedVector apply(const GradedVector& v) const { return s_.apply(v); }
  GradedVector adjoint_apply(const GradedVector& v) const { return s_.adjoint().apply(v); }
  GradedVector embed_host(const GradedVector& h) const;
  GradedVector restrict_to_host(const GradedVector& k) const;
  GradedOperator host_inclusion() const;

  // Closed-form diagonal blocks of S*S.
  std::vector<GramBlock> gram_blocks() const;

  friend bool operator==(const LiftingOperator&, const LiftingOperator&) = default;

 private:
  void assemble();

  LiftingKind kind_ = LiftingKind::Natural;
  GradedOperator base_;
  std::map<std::string, Matrix> blocks_;
  std::size_t window_grades_ = 0;
  std::optional<InnerLifting> inner_;
  GradedOperator s_;
  Placement embedding_;
  std::size_t isometric_dim_ = 0;
  bool degenerate_ = false;
};

double gram_min_eigenvalue(const std::vector<GramBlock>& blocks);

struct MinimalityResult {
  SubspaceBasis span;  // of the generated vectors, inside the window
  std::size_t window_dim = 0;
  bool minimal = false;
};
// Span of S^k (generator space) for k <= max_grade + 1, cut to max_grade grades.
MinimalityResult minimal_restriction(const LiftingOperator& s, std::size_t max_grade);

Json to_json(const LiftingOperator& s);
LiftingOperator lifting_from_json(const Json& j);

}  // namespace liftlab
