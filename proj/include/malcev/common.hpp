#ifndef MALCEV_COMMON_HPP_
#define MALCEV_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace malcev {

// Error taxonomy, mirrored by the CLI exit codes:
//   input_error / precondition_error -> exit 3 (bad input)
//   limit_error                      -> exit 2 (resource bound hit, result unknown)
// Mathematical failures are never exceptions; they are verdict values.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class input_error : public error {
 public:
  using error::error;
};

class precondition_error : public error {
 public:
  using error::error;
};

// p-adic arithmetic that would need a digit beyond the tracked precision.
class precision_error : public error {
 public:
  using error::error;
};

class limit_error : public error {
 public:
  using error::error;
};

// Carrier element labels as they appear in files: JSON integers or strings.
// Kept verbatim so serialization round-trips bit-exactly.
using Label = std::variant<std::int64_t, std::string>;

inline std::string label_text(const Label& l) {
  if (std::holds_alternative<std::int64_t>(l))
    return std::to_string(std::get<std::int64_t>(l));
  return std::get<std::string>(l);
}

inline Label int_label(std::int64_t v) { return Label{v}; }

// Deterministic PRNG used everywhere a seed appears. splitmix64 is fully
// specified by its constants, so streams are identical across platforms and
// standard libraries (std::uniform_int_distribution is not portable).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, n); modulo bias is irrelevant at our n.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  // Inclusive range draw.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace malcev

#endif  // MALCEV_COMMON_HPP_
