#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace ssdlat {

struct Counterexample {
  std::string code;     // canonical code of the offending diagram, empty for numeric checks
  std::string witness;  // nodes or indices that break the property
};

/// Result of one machine-checked property over a range of sizes.
struct CheckReport {
  std::string name;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::uint64_t checked = 0;
  std::optional<Counterexample> counterexample;

  bool pass() const noexcept { return !counterexample.has_value(); }

  /// Records the first failure only.
  void fail(std::string code, std::string witness) {
    if (!counterexample) counterexample = Counterexample{std::move(code), std::move(witness)};
  }
};

}  // namespace ssdlat
