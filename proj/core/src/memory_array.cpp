#include "adra/memory_array.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "adra/errors.hpp"

namespace adra {

ArrayGeometry ArrayGeometry::square(std::size_t size, std::size_t word_width) {
  ArrayGeometry g;
  g.rows = size;
  g.cols = size;
  g.word_width = word_width;
  g.words_per_row = word_width == 0 ? 0 : size / word_width;
  g.mux_factor = 1;
  return g;
}

void ArrayGeometry::validate() const {
  if (rows == 0 || cols == 0) {
    throw InvalidParams("array must have at least one row and one column");
  }
  if (word_width == 0 || words_per_row == 0) {
    throw InvalidParams("word_width and words_per_row must be >= 1");
  }
  if (word_width * words_per_row > cols) {
    throw InvalidParams(fmt::format(
        "word_width * words_per_row ({} * {}) exceeds cols ({})", word_width,
        words_per_row, cols));
  }
  if (mux_factor == 0 || cols % mux_factor != 0) {
    throw InvalidParams(fmt::format("mux_factor ({}) must divide cols ({})",
                                    mux_factor, cols));
  }
}

void BiasPlan::validate() const {
  if (!(v_gread1 > 0.0)) {
    throw InvalidParams("v_gread1 > 0 required");
  }
  if (!(v_gread2 > v_gread1)) {
    throw InvalidParams(fmt::format(
        "v_gread2 > v_gread1 required (v_gread1={}, v_gread2={})", v_gread1,
        v_gread2));
  }
  if (!(v_gread2 < v_set)) {
    throw InvalidParams(fmt::format(
        "v_gread2 < v_set required (v_gread2={}, v_set={})", v_gread2, v_set));
  }
  if (!(v_read > 0.0)) {
    throw InvalidParams("v_read > 0 required");
  }
  if (!(v_reset < 0.0)) {
    throw InvalidParams("v_reset < 0 required");
  }
}

std::string_view to_string(ActivationMode m) noexcept {
  switch (m) {
    case ActivationMode::StandardRead:
      return "read";
    case ActivationMode::SymmetricCiM:
      return "symmetric";
    case ActivationMode::AdraCiM:
      return "adra";
  }
  return "?";
}

MemoryArray::MemoryArray(const ArrayGeometry& geometry) : geometry_(geometry) {
  geometry_.validate();
  cells_.assign(geometry_.rows * geometry_.cols, BitState::HRS);
}

std::size_t MemoryArray::index(std::size_t row, std::size_t col) const {
  if (row >= geometry_.rows || col >= geometry_.cols) {
    throw OutOfRange(fmt::format("cell ({}, {}) outside {}x{} array", row, col,
                                 geometry_.rows, geometry_.cols));
  }
  return row * geometry_.cols + col;
}

BitState MemoryArray::cell(std::size_t row, std::size_t col) const {
  return cells_[index(row, col)];
}

void MemoryArray::set_cell(std::size_t row, std::size_t col, BitState state) {
  cells_[index(row, col)] = state;
}

std::size_t MemoryArray::column_of(std::size_t word_index,
                                   std::size_t bit) const {
  if (word_index >= geometry_.words_per_row) {
    throw OutOfRange(fmt::format("word index {} >= words_per_row {}",
                                 word_index, geometry_.words_per_row));
  }
  if (bit >= geometry_.word_width) {
    throw OutOfRange(
        fmt::format("bit {} >= word_width {}", bit, geometry_.word_width));
  }
  return word_index * geometry_.word_width + bit;
}

void MemoryArray::write_word(std::size_t row, std::size_t word_index,
                             const std::vector<bool>& bits) {
  if (row >= geometry_.rows) {
    throw OutOfRange(fmt::format("row {} >= rows {}", row, geometry_.rows));
  }
  if (bits.size() != geometry_.word_width) {
    throw InvalidParams(fmt::format("word has {} bits, expected {}",
                                    bits.size(), geometry_.word_width));
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    cells_[index(row, column_of(word_index, i))] = to_state(bits[i]);
  }
}

void MemoryArray::write_value(std::size_t row, std::size_t word_index,
                              std::uint64_t value) {
  std::vector<bool> bits(geometry_.word_width);
  for (std::size_t i = 0; i < bits.size() && i < 64; ++i) {
    bits[i] = ((value >> i) & 1u) != 0;
  }
  write_word(row, word_index, bits);
}

std::vector<bool> MemoryArray::read_word(std::size_t row,
                                         std::size_t word_index) const {
  std::vector<bool> bits(geometry_.word_width);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = to_bit(cell(row, column_of(word_index, i)));
  }
  return bits;
}

std::vector<bool> MemoryArray::read_row(std::size_t row) const {
  std::vector<bool> bits(geometry_.cols);
  for (std::size_t c = 0; c < bits.size(); ++c) bits[c] = to_bit(cell(row, c));
  return bits;
}

std::vector<double> MemoryArray::column_current(
    const DeviceParams& device, const BiasPlan& bias, std::size_t row_a,
    std::optional<std::size_t> row_b, ActivationMode mode) {
  device.validate();
  if (row_a >= geometry_.rows) {
    throw OutOfRange(fmt::format("row {} >= rows {}", row_a, geometry_.rows));
  }
  const bool needs_b = mode != ActivationMode::StandardRead;
  if (needs_b != row_b.has_value()) {
    throw InvalidParams(fmt::format(
        "activation mode '{}' {} a second operand row", to_string(mode),
        needs_b ? "requires" : "does not take"));
  }
  if (row_b) {
    if (*row_b >= geometry_.rows) {
      throw OutOfRange(
          fmt::format("row {} >= rows {}", *row_b, geometry_.rows));
    }
    if (*row_b == row_a) {
      throw InvalidParams("dual-row activation needs two distinct rows");
    }
  }

  const double vg_a = mode == ActivationMode::AdraCiM ? bias.v_gread1
                                                      : bias.v_gread2;
  std::vector<double> current(geometry_.cols);
  for (std::size_t c = 0; c < geometry_.cols; ++c) {
    double i_sl = cell_current(cells_[row_a * geometry_.cols + c], vg_a, device);
    if (row_b) {
      i_sl += cell_current(cells_[*row_b * geometry_.cols + c], bias.v_gread2,
                           device);
    }
    current[c] = i_sl;
  }
  ++activations_;
  return current;
}

MemoryArray MemoryArray::from_text(std::string_view text,
                                   std::size_t word_width,
                                   std::size_t mux_factor) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char ch : line) {
      if (ch != '0' && ch != '1') {
        throw ConfigError(
            fmt::format("array text may only contain '0' and '1' (found '{}')",
                        ch),
            line_no);
      }
    }
    if (!lines.empty() && line.size() != lines.front().size()) {
      throw ConfigError(fmt::format("row has {} columns, expected {}",
                                    line.size(), lines.front().size()),
                        line_no);
    }
    lines.push_back(line);
  }
  if (lines.empty()) {
    throw ConfigError("array text has no rows");
  }

  ArrayGeometry g;
  g.rows = lines.size();
  g.cols = lines.front().size();
  g.word_width = word_width == 0 ? g.cols : word_width;
  g.words_per_row = g.cols / g.word_width;
  g.mux_factor = mux_factor;

  MemoryArray array(g);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      array.set_cell(r, c, to_state(lines[r][c] == '1'));
    }
  }
  return array;
}

std::string MemoryArray::to_text() const {
  std::string out;
  out.reserve(geometry_.rows * (geometry_.cols + 1));
  for (std::size_t r = 0; r < geometry_.rows; ++r) {
    for (std::size_t c = 0; c < geometry_.cols; ++c) {
      out.push_back(to_bit(cells_[r * geometry_.cols + c]) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<std::size_t> selected_columns(const ArrayGeometry& geometry,
                                          double parallelism) {
  geometry.validate();
  if (!(parallelism > 0.0 && parallelism <= 1.0)) {
    throw InvalidParams(
        fmt::format("parallelism must lie in (0, 1] (got {})", parallelism));
  }
  const double words = parallelism * static_cast<double>(geometry.words_per_row);
  const double rounded = std::round(words);
  if (std::abs(words - rounded) > 1e-9 * geometry.words_per_row ||
      rounded < 1.0) {
    throw InvalidParams(fmt::format(
        "parallelism {} selects {} of {} words; must be a whole number",
        parallelism, words, geometry.words_per_row));
  }
  const auto n_words = static_cast<std::size_t>(rounded);
  std::vector<std::size_t> cols;
  cols.reserve(n_words * geometry.word_width);
  for (std::size_t c = 0; c < n_words * geometry.word_width; ++c) {
    cols.push_back(c);
  }
  return cols;
}

}  // namespace adra
