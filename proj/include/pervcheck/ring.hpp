#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pervcheck {

/// The Laurent ring Q[t_1^{+-1}, ..., t_N^{+-1}] attached to a semi-abelian
/// variety with torus rank m and abelian rank g, N = m + 2g. Variables
/// 0..m-1 are torus coordinates, m..N-1 abelian coordinates.
class RingContext {
public:
  RingContext(std::vector<std::string> names, int torus_rank, int abelian_rank);

  /// Names t1..tN.
  static RingContext standard(int torus_rank, int abelian_rank);

  int num_vars() const { return static_cast<int>(data_->names.size()); }
  int torus_rank() const { return data_->m; }
  int abelian_rank() const { return data_->g; }
  const std::vector<std::string>& names() const { return data_->names; }
  const std::string& name(int i) const { return data_->names.at(static_cast<std::size_t>(i)); }
  bool is_abelian_var(int i) const { return i >= data_->m; }

  bool operator==(const RingContext& o) const;

private:
  struct Data {
    std::vector<std::string> names;
    int m = 0;
    int g = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// Throws InputError unless a and b describe the same ring.
void require_same_context(const RingContext& a, const RingContext& b, const char* what);

} // namespace pervcheck
