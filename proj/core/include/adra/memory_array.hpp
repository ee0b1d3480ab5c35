#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adra/device_model.hpp"

namespace adra {

struct ArrayGeometry {
  std::size_t rows = 1024;
  std::size_t cols = 1024;
  std::size_t word_width = 32;
  std::size_t words_per_row = 32;
  std::size_t mux_factor = 1;

  // Square array of `size` rows/cols with as many `word_width`-bit words per
  // row as fit.
  static ArrayGeometry square(std::size_t size, std::size_t word_width = 32);

  void validate() const;

  friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;
};

// Read/write biases (volts). Defaults are the evaluated operating point.
struct BiasPlan {
  double v_read = 1.0;
  double v_gread1 = 0.83;
  double v_gread2 = 1.0;
  double v_set = 3.7;
  double v_reset = -5.0;

  void validate() const;

  friend bool operator==(const BiasPlan&, const BiasPlan&) = default;
};

// StandardRead drives one wordline to v_gread2. SymmetricCiM drives both
// operand wordlines to v_gread2 (prior-art multi-wordline CiM). AdraCiM
// drives row A to v_gread1 and row B to v_gread2.
enum class ActivationMode : std::uint8_t { StandardRead, SymmetricCiM, AdraCiM };

std::string_view to_string(ActivationMode m) noexcept;

// rows x cols grid of bitcells. Words occupy contiguous columns, LSB first:
// bit i of word w lives in column w * word_width + i.
class MemoryArray {
 public:
  explicit MemoryArray(const ArrayGeometry& geometry);

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  std::size_t rows() const noexcept { return geometry_.rows; }
  std::size_t cols() const noexcept { return geometry_.cols; }

  BitState cell(std::size_t row, std::size_t col) const;
  void set_cell(std::size_t row, std::size_t col, BitState state);

  std::size_t column_of(std::size_t word_index, std::size_t bit) const;

  // Direct state assignment; the two-phase array write protocol is not
  // modeled.
  void write_word(std::size_t row, std::size_t word_index,
                  const std::vector<bool>& bits);
  // Writes the low word_width bits of `value`.
  void write_value(std::size_t row, std::size_t word_index, std::uint64_t value);

  std::vector<bool> read_word(std::size_t row, std::size_t word_index) const;
  std::vector<bool> read_row(std::size_t row) const;

  // Per-column sense-line current for one activation. row_b must be given
  // iff mode != StandardRead and must differ from row_a. Every call counts
  // as one array activation.
  std::vector<double> column_current(const DeviceParams& device,
                                     const BiasPlan& bias, std::size_t row_a,
                                     std::optional<std::size_t> row_b,
                                     ActivationMode mode);

  std::uint64_t activation_count() const noexcept { return activations_; }
  void reset_activation_count() noexcept { activations_ = 0; }

  // Plain text grid of '0'/'1', one row per line. word_width == 0 means one
  // word spanning the whole row.
  static MemoryArray from_text(std::string_view text, std::size_t word_width = 0,
                               std::size_t mux_factor = 1);
  std::string to_text() const;

 private:
  std::size_t index(std::size_t row, std::size_t col) const;

  ArrayGeometry geometry_;
  std::vector<BitState> cells_;
  std::uint64_t activations_ = 0;
};

// Columns of the first parallelism * words_per_row words. Throws
// InvalidParams unless that product is a whole number of words in
// [1, words_per_row].
std::vector<std::size_t> selected_columns(const ArrayGeometry& geometry,
                                          double parallelism);

}  // namespace adra
