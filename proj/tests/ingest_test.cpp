#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "wear/ingest.hpp"

namespace wear {
namespace {

TEST(LoadCsv, HeaderThreeRowsTwoFeatures) {
  const auto data = load_csv_text("a,b,y\n1,2,3\n4,5,6\n7,8,9\n", CsvSchema{.target_column = std::string("y")});
  ASSERT_EQ(data.rows(), 3u);
  ASSERT_EQ(data.dimension(), 2u);
  EXPECT_EQ(data.experts(), 0u);
  EXPECT_EQ(data.features(2, 1), 8.0);
  EXPECT_EQ(data.labels()[1], 6.0);
}

TEST(LoadCsv, NonNumericCellCitesRowAndColumn) {
  try {
    load_csv_text("x,y\n1,2\nabc,3\n", CsvSchema{.target_column = std::string("y")});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(LoadCsv, EmptyCellRejected) {
  EXPECT_THROW(load_csv_text("x,y\n1,\n", CsvSchema{.target_column = std::string("y")}), ParseError);
}

TEST(LoadCsv, RaggedRowRejected) {
  EXPECT_THROW(load_csv_text("x,y\n1,2\n3\n", CsvSchema{.target_column = std::string("y")}), ParseError);
}

TEST(LoadCsv, EmptyFile) {
  EXPECT_THROW(load_csv_text("", CsvSchema{}), InvalidInput);
  EXPECT_THROW(load_csv_text("x,y\n", CsvSchema{}), InvalidInput);
}

TEST(LoadCsv, MissingTarget) {
  EXPECT_THROW(load_csv_text("x,y\n1,2\n", CsvSchema{.target_column = std::string("z")}), InvalidInput);
  EXPECT_THROW(load_csv_text("x,y\n1,2\n", CsvSchema{.target_column = Index{5}}), InvalidInput);
}

TEST(LoadCsv, ExplicitFeaturesAndIndices) {
  const CsvSchema schema{.has_header = false,
                         .target_column = Index{0},
                         .feature_columns = std::vector<ColumnRef>{Index{2}},
                         .delimiter = ';'};
  const auto data = load_csv_text("1;2;3\n4;5;6\n", schema);
  ASSERT_EQ(data.dimension(), 1u);
  EXPECT_EQ(data.features(1, 0), 6.0);
  EXPECT_EQ(data.labels()[0], 1.0);
}

TEST(LoadCsv, QuotesCrlfAndBom) {
  const auto data = load_csv_text("\xEF\xBB\xBF\"x\",\"y\"\r\n\"1.5\",2e3\r\n\r\n-3, 4 \r\n",
                                  CsvSchema{.target_column = std::string("y")});
  ASSERT_EQ(data.rows(), 2u);
  EXPECT_EQ(data.features(0, 0), 1.5);
  EXPECT_EQ(data.labels()[0], 2000.0);
  EXPECT_EQ(data.labels()[1], 4.0);
}

TEST(ParseCsv, EscapedQuotes) {
  const auto rows = parse_csv("a,\"b \"\"q\"\", c\"\n", ',');
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].size(), 2u);
  EXPECT_EQ(rows[0][1], "b \"q\", c");
  EXPECT_THROW(parse_csv("\"open", ','), ParseError);
}

TEST(LoadCsv, FromDiskKeepsRowOrder) {
  const auto path = std::filesystem::temp_directory_path() / "wear_ingest_test.csv";
  {
    std::ofstream out(path);
    out << "f,t\n";
    for (int i = 0; i < 100; ++i) out << i << ',' << 2 * i << '\n';
  }
  const CsvSchema schema{.path = path.string(), .target_column = std::string("t")};
  const auto a = load_csv(schema);
  const auto b = load_csv(schema);
  for (Index i = 0; i < 100; ++i) EXPECT_EQ(a.features(i, 0), static_cast<double>(i));
  EXPECT_EQ(a.labels(), b.labels());
  std::filesystem::remove(path);
  EXPECT_THROW(load_csv(schema), InvalidInput);
}

}  // namespace
}  // namespace wear
