#include <gtest/gtest.h>

#include "adra/errors.hpp"
#include "adra/memory_array.hpp"

namespace adra {
namespace {

ArrayGeometry small_geometry() {
  ArrayGeometry g;
  g.rows = 4;
  g.cols = 8;
  g.word_width = 4;
  g.words_per_row = 2;
  return g;
}

TEST(ArrayGeometry, DefaultsAndSquare) {
  const ArrayGeometry g;
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.rows, 1024u);
  const ArrayGeometry s = ArrayGeometry::square(256, 32);
  EXPECT_EQ(s.cols, 256u);
  EXPECT_EQ(s.words_per_row, 8u);
}

TEST(ArrayGeometry, RejectsInconsistentLayout) {
  ArrayGeometry g = small_geometry();
  g.words_per_row = 3;
  EXPECT_THROW(g.validate(), InvalidParams);
  g = small_geometry();
  g.mux_factor = 3;
  EXPECT_THROW(g.validate(), InvalidParams);
  g = small_geometry();
  g.rows = 0;
  EXPECT_THROW(g.validate(), InvalidParams);
}

TEST(BiasPlan, OrderingInvariant) {
  BiasPlan b;
  EXPECT_NO_THROW(b.validate());
  b.v_gread1 = 1.2;
  try {
    b.validate();
    FAIL() << "expected InvalidParams";
  } catch (const InvalidParams& e) {
    EXPECT_NE(std::string(e.what()).find("v_gread2 > v_gread1"), std::string::npos);
  }
  b = BiasPlan{};
  b.v_gread2 = 4.0;
  EXPECT_THROW(b.validate(), InvalidParams);
  b = BiasPlan{};
  b.v_reset = 0.5;
  EXPECT_THROW(b.validate(), InvalidParams);
}

TEST(MemoryArray, StartsInHrs) {
  const MemoryArray a(small_geometry());
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(a.cell(r, c), BitState::HRS);
  }
}

TEST(MemoryArray, WordRoundTripAndLayout) {
  MemoryArray a(small_geometry());
  a.write_value(2, 1, 0b1010);
  EXPECT_EQ(a.read_word(2, 1), (std::vector<bool>{false, true, false, true}));
  EXPECT_EQ(a.column_of(1, 3), 7u);
  // LSB first: bit 1 of word 1 sits in column 5.
  EXPECT_EQ(a.cell(2, 5), BitState::LRS);
  EXPECT_EQ(a.cell(2, 4), BitState::HRS);
  EXPECT_EQ(a.read_word(2, 0), std::vector<bool>(4, false));
}

TEST(MemoryArray, IndexErrors) {
  MemoryArray a(small_geometry());
  EXPECT_THROW(a.cell(4, 0), OutOfRange);
  EXPECT_THROW(a.column_of(2, 0), OutOfRange);
  EXPECT_THROW(a.column_of(0, 4), OutOfRange);
  EXPECT_THROW(a.write_word(0, 0, {true, false}), InvalidParams);
  EXPECT_THROW(a.write_value(9, 0, 1), OutOfRange);
}

TEST(MemoryArray, ColumnCurrentMatchesCellSum) {
  MemoryArray a(small_geometry());
  a.write_value(0, 0, 0b0110);  // A
  a.write_value(1, 0, 0b0101);  // B
  const DeviceParams d;
  const BiasPlan b;
  const auto adra = a.column_current(d, b, 0, 1, ActivationMode::AdraCiM);
  for (std::size_t bit = 0; bit < 4; ++bit) {
    const double expected = cell_current(a.cell(0, bit), b.v_gread1, d) +
                            cell_current(a.cell(1, bit), b.v_gread2, d);
    EXPECT_DOUBLE_EQ(adra[bit], expected);
  }
  const auto sym = a.column_current(d, b, 0, 1, ActivationMode::SymmetricCiM);
  EXPECT_DOUBLE_EQ(sym[0], sym[1]);  // (0,1) and (1,0)
  const auto read = a.column_current(d, b, 1, std::nullopt, ActivationMode::StandardRead);
  EXPECT_DOUBLE_EQ(read[0], cell_current(BitState::LRS, b.v_gread2, d));
  EXPECT_DOUBLE_EQ(read[1], cell_current(BitState::HRS, b.v_gread2, d));
  EXPECT_EQ(a.activation_count(), 3u);
  a.reset_activation_count();
  EXPECT_EQ(a.activation_count(), 0u);
}

TEST(MemoryArray, ActivationArgumentChecks) {
  MemoryArray a(small_geometry());
  const DeviceParams d;
  const BiasPlan b;
  EXPECT_THROW(a.column_current(d, b, 0, 0, ActivationMode::AdraCiM), InvalidParams);
  EXPECT_THROW(a.column_current(d, b, 0, std::nullopt, ActivationMode::AdraCiM),
               InvalidParams);
  EXPECT_THROW(a.column_current(d, b, 0, 1, ActivationMode::StandardRead), InvalidParams);
  EXPECT_THROW(a.column_current(d, b, 0, 7, ActivationMode::AdraCiM), OutOfRange);
  EXPECT_EQ(a.activation_count(), 0u);
}

TEST(MemoryArray, TextRoundTrip) {
  const std::string text = "0101\n1100\n";
  const MemoryArray a = MemoryArray::from_text(text, 2);
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a.geometry().words_per_row, 2u);
  EXPECT_EQ(a.to_text(), text);
}

TEST(MemoryArray, TextErrorsCarryLine) {
  try {
    MemoryArray::from_text("0101\n01x1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    MemoryArray::from_text("0101\n\n011\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(MemoryArray::from_text(""), ConfigError);
}

TEST(SelectedColumns, WholeWordsOnly) {
  const ArrayGeometry g = small_geometry();
  EXPECT_EQ(selected_columns(g, 0.5), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(selected_columns(g, 1.0).size(), 8u);
  EXPECT_THROW(selected_columns(g, 0.3), InvalidParams);
  EXPECT_THROW(selected_columns(g, 0.0), InvalidParams);
}

}  // namespace
}  // namespace adra
