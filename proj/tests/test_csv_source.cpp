#include <gtest/gtest.h>

#include "pwakg/csv/logical_table.hpp"
#include "pwakg/error.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pwakg;
using namespace pwakg::csv;

namespace {

std::string render_field(const std::string& value, char delimiter) {
  bool quote = value.find_first_of(std::string("\"\n\r") + delimiter) != std::string::npos ||
               value.empty();
  if (!quote) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string random_cell(gen::Rng& rng) {
  static const char kAlphabet[] = {'a', 'b', ',', '"', '\n', ' ', ';', '1'};
  std::string out;
  std::size_t n = rng() % 5;
  for (std::size_t i = 0; i < n; ++i) out += kAlphabet[rng() % sizeof kAlphabet];
  return out;
}

}  // namespace

TEST(ParseCsv, WeatherSample) {
  auto t = parse_csv("date,cloud_cover\n2014-02-02T00:00:00,10\n2014-02-03T00:00:00,55\n", "weather");
  ASSERT_EQ(t.columns, (std::vector<std::string>{"date", "cloud_cover"}));
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.cell(0, "cloud_cover"), "10");
  EXPECT_EQ(t.cell(0, "date"), "2014-02-02T00:00:00");
}

TEST(ParseCsv, HeaderOnly) {
  auto t = parse_csv("date,cloud_cover\n", "w");
  EXPECT_EQ(t.column_count(), 2u);
  EXPECT_EQ(t.row_count(), 0u);
}

TEST(ParseCsv, QuotedFieldWithDelimiter) {
  auto t = parse_csv("a,b\n\"a,b\",x\n", "t");
  EXPECT_EQ(t.cell(0, "a"), "a,b");
}

TEST(ParseCsv, QuotedNewlineDoesNotSplitRecord) {
  auto t = parse_csv("a,b\n\"line1\nline2\",x\ny,z\n", "t");
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.cell(0, "a"), "line1\nline2");
}

TEST(ParseCsv, CellsAreNotTrimmed) {
  auto t = parse_csv("a,b\n  1 , 2\n", "t");
  EXPECT_EQ(t.cell(0, "a"), "  1 ");
  EXPECT_EQ(t.cell(0, "b"), " 2");
}

TEST(ParseCsv, ShortRowIsPaddedWithWarning) {
  auto t = parse_csv("a,b,c\n1\n", "t");
  ASSERT_EQ(t.rows[0].size(), 3u);
  EXPECT_EQ(t.cell(0, "c"), "");
  EXPECT_EQ(t.warnings.size(), 1u);
}

TEST(ParseCsv, LongRowIsAnError) {
  try {
    parse_csv("a,b\n1,2\n1,2,3\n", "t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostics()[0].line, 3u);
  }
}

TEST(ParseCsv, UnbalancedQuoteReportsLine) {
  try {
    parse_csv("a,b\n1,2\n\"open,3\n4,5\n", "t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostics()[0].line, 3u);
  }
}

TEST(ParseCsv, DuplicateColumnIsAnError) { EXPECT_THROW(parse_csv("a,a\n1,2\n", "t"), ParseError); }

TEST(ParseCsv, NoHeaderSynthesizesNames) {
  auto t = parse_csv("1,2,3\n4,5,6\n", "t", {.delimiter = ',', .has_header = false});
  EXPECT_EQ(t.columns, (std::vector<std::string>{"col1", "col2", "col3"}));
  EXPECT_EQ(t.row_count(), 2u);
}

TEST(ParseCsv, OtherDelimiterAndCrlf) {
  auto t = parse_csv("a;b\r\n1;2\r\n", "t", {.delimiter = ';'});
  EXPECT_EQ(t.cell(0, "b"), "2");
}

TEST(ColumnIndex, DirectLookup) {
  auto t = parse_csv("date,cloud_cover\n2014-02-02T00:00:00,10\n", "weather");
  EXPECT_EQ(column_index(t, "cloud_cover"), 1u);
}

TEST(ColumnIndex, CaseSensitiveWithSuggestion) {
  auto t = parse_csv("date,cloud_cover\n2014-02-02T00:00:00,10\n", "weather");
  try {
    column_index(t, "Cloud_Cover");
    FAIL();
  } catch (const NotFoundError& e) {
    EXPECT_NE(std::string(e.what()).find("cloud_cover"), std::string::npos) << e.what();
  }
}

TEST(ColumnIndexProperty, AgreesWithScan) {
  gen::Rng rng(61);
  for (int round = 0; round < 200; ++round) {
    LogicalTable t;
    std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) t.columns.push_back("c" + std::to_string(rng() % 10) + "_" + std::to_string(i));
    std::string probe = rng() % 2 ? t.columns[rng() % n] : "c" + std::to_string(rng() % 10);
    std::optional<std::size_t> want;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.columns[i] == probe) want = i;
    }
    if (want) {
      EXPECT_EQ(column_index(t, probe), *want);
    } else {
      EXPECT_THROW(column_index(t, probe), NotFoundError);
    }
  }
}

TEST(CsvProperty, AgreesWithReferenceParser) {
  gen::Rng rng(62);
  for (int round = 0; round < 300; ++round) {
    char delimiter = round % 3 == 0 ? ';' : ',';
    std::size_t columns = 2 + rng() % 3;
    std::size_t rows = rng() % 6;
    std::string text;
    for (std::size_t c = 0; c < columns; ++c) {
      if (c > 0) text += delimiter;
      text += "h" + std::to_string(c);
    }
    text += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < columns; ++c) {
        if (c > 0) text += delimiter;
        text += render_field(random_cell(rng), delimiter);
      }
      text += "\n";
    }
    auto want = oracle::reference_csv(text, delimiter);
    auto got = parse_csv(text, "t", {.delimiter = delimiter});
    ASSERT_EQ(want.size(), got.rows.size() + 1) << text;
    EXPECT_EQ(want[0], got.columns);
    for (std::size_t r = 0; r < got.rows.size(); ++r) EXPECT_EQ(want[r + 1], got.rows[r]) << text;
  }
}

TEST(CsvProperty, LoadingIsLossless) {
  gen::Rng rng(63);
  for (int round = 0; round < 200; ++round) {
    LogicalTable t;
    t.name = "t";
    std::size_t columns = 2 + rng() % 3;
    for (std::size_t c = 0; c < columns; ++c) t.columns.push_back("h" + std::to_string(c));
    std::size_t rows = rng() % 6;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < columns; ++c) row.push_back(random_cell(rng));
      t.rows.push_back(std::move(row));
    }
    auto back = parse_csv(to_csv(t), "t");
    ASSERT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows, t.rows) << to_csv(t);
  }
}

TEST(LoadCsv, NameFromStemAndMissingFile) {
  fixtures::TempDir dir("pwakg_csv");
  fixtures::write_file(dir / "weather.csv", "\xEF\xBB\xBF" "date,cloud_cover\n2014-02-02T00:00:00,10\n");
  auto t = load_csv(dir / "weather.csv");
  EXPECT_EQ(t.name, "weather");
  EXPECT_EQ(t.columns[0], "date");
  EXPECT_THROW(load_csv(dir / "missing.csv"), Error);
}
