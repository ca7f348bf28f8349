#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "swiftnorm/error.hpp"
#include "swiftnorm/ingest.hpp"

using namespace swiftnorm;

TEST(ParsePlain, PassesLineThrough) {
  const auto recs = parse_plain({"JOHN SMITH 10 MAIN ST"}, "f");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].raw_text, "JOHN SMITH 10 MAIN ST");
  EXPECT_EQ(recs[0].line_index, 0u);
  EXPECT_EQ(recs[0].source_id, "f");
  EXPECT_FALSE(recs[0].tag.has_value());
}

TEST(ParsePlain, SkipsBlankLines) {
  EXPECT_TRUE(parse_plain({"", "  "}, "f").empty());
}

TEST(ParsePlain, KeepsLineIndices) {
  const auto recs = parse_plain({"A", "", "B"}, "f");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].line_index, 0u);
  EXPECT_EQ(recs[1].line_index, 2u);
}

TEST(ParsePlain, IdempotentUnderReserialization) {
  const std::vector<std::string> lines{"X", "", "  Y Z", "W"};
  const auto first = parse_plain(lines, "f");
  std::vector<std::string> again;
  for (const auto& r : first) again.push_back(r.raw_text);
  const auto second = parse_plain(again, "f");
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].raw_text, second[i].raw_text);
}

TEST(ParseMt, JoinsContinuationLines) {
  const auto r = parse_mt_block4(":50K:/12345678\nJOHN SMITH\n10 MAIN ST", {"50K"}, "m");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].raw_text, "/12345678 JOHN SMITH 10 MAIN ST");
  EXPECT_EQ(r.records[0].tag, "50K");
}

TEST(ParseMt, FiltersTags) {
  const auto r = parse_mt_block4(":20:REF123\n:59:ACME LTD", {"59"}, "m");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].raw_text, "ACME LTD");
  EXPECT_EQ(r.records[0].line_index, 1u);
}

TEST(ParseMt, NoWantedTags) {
  EXPECT_TRUE(parse_mt_block4(":20:REF\n:32A:200101EUR1,00", {"59"}, "m").records.empty());
}

TEST(ParseMt, BlockWrapperAndTerminator) {
  const auto r = parse_mt_block4("{4:\n:59:ACME LTD\nLONDON\n-}", {"59"}, "m");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].raw_text, "ACME LTD LONDON");
}

TEST(ParseMt, MalformedTagLineIsReportedAndSkipped) {
  const auto r = parse_mt_block4(":59:ACME LTD\n:5X:BROKEN\n:59:OTHER CO", {"59"}, "m");
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[1].raw_text, "OTHER CO");
  ASSERT_FALSE(r.malformed.empty());
}

TEST(ReadRecords, MissingFileNamesPath) {
  try {
    read_records("/nonexistent/input.txt", InputFormat::plain, {"59"});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/input.txt"), std::string::npos);
  }
}

TEST(ReadRecords, PlainFile) {
  const auto path = std::filesystem::temp_directory_path() / "swiftnorm_ingest_plain.txt";
  std::ofstream(path) << "ACME LTD\r\n\r\nJOHN SMITH\n";
  const auto recs = read_records(path, InputFormat::plain, {});
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].raw_text, "ACME LTD");
  EXPECT_EQ(recs[1].line_index, 2u);
  std::filesystem::remove(path);
}

TEST(InputFormat, RoundTrip) {
  EXPECT_EQ(parse_input_format("mt"), InputFormat::mt);
  EXPECT_EQ(to_string(InputFormat::plain), "plain");
  EXPECT_THROW(parse_input_format("xml"), ConfigInvalid);
}
