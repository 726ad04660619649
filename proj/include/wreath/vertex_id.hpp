#ifndef WREATH_VERTEX_ID_HPP
#define WREATH_VERTEX_ID_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace wreath {

/// Canonical byte-string name of a vertex. Equality and ordering are those
/// of the encoding, so every iteration order in the library is derived
/// from plain lexicographic byte comparison.
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::string enc) : enc_(std::move(enc)) {}
  explicit VertexId(std::string_view enc) : enc_(enc) {}
  explicit VertexId(const char* enc) : enc_(enc) {}

  const std::string& str() const noexcept { return enc_; }
  bool empty() const noexcept { return enc_.empty(); }

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    return a.enc_.compare(b.enc_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const VertexId& v) {
    return os << v.enc_;
  }

 private:
  std::string enc_;
};

// Signed decimal: "0", "+3", "-7".
inline std::string encode_int(long long k) {
  if (k == 0) return "0";
  return (k > 0 ? "+" : "") + std::to_string(k);
}

}  // namespace wreath

template <>
struct std::hash<wreath::VertexId> {
  std::size_t operator()(const wreath::VertexId& v) const noexcept {
    return std::hash<std::string>{}(v.str());
  }
};

#endif  // WREATH_VERTEX_ID_HPP
