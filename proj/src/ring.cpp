#include "pervcheck/ring.hpp"

#include "pervcheck/errors.hpp"

#include <cctype>
#include <set>

namespace pervcheck {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

} // namespace

RingContext::RingContext(std::vector<std::string> names, int torus_rank, int abelian_rank) {
  if (torus_rank < 0 || abelian_rank < 0)
    throw InputError("ring split ranks must be nonnegative");
  if (static_cast<std::size_t>(torus_rank + 2 * abelian_rank) != names.size())
    throw InputError("ring split violates m + 2g = N (m=" + std::to_string(torus_rank) +
                     ", g=" + std::to_string(abelian_rank) +
                     ", N=" + std::to_string(names.size()) + ")");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
  }
  data_ = std::make_shared<const Data>(Data{std::move(names), torus_rank, abelian_rank});
}

RingContext RingContext::standard(int torus_rank, int abelian_rank) {
  std::vector<std::string> names;
  for (int i = 0; i < torus_rank + 2 * abelian_rank; ++i) names.push_back("t" + std::to_string(i + 1));
  return RingContext(std::move(names), torus_rank, abelian_rank);
}

bool RingContext::operator==(const RingContext& o) const {
  if (data_ == o.data_) return true;
  return data_->m == o.data_->m && data_->g == o.data_->g && data_->names == o.data_->names;
}

void require_same_context(const RingContext& a, const RingContext& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": operands live in different rings");
}

} // namespace pervcheck
