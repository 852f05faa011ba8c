#include <gtest/gtest.h>

#include <sstream>

#include "reliab/error.hpp"
#include "reliab/report.hpp"

using namespace reliab;

namespace {

Report sample_report() {
  Report r;
  r.command = "simulate";
  r.version = "9.9.9";
  r.config["seed"] = 7;
  r.config["grid"] = {100, 200};
  r.config["dist"] = "lognormal:0,1";
  Section s{"tail_errors", {"n", "method", "dev", "pass", "note"}, {}};
  s.add_row({std::int64_t{100}, std::string("classic"), -0.0131, true, std::monostate{}});
  s.add_row({std::int64_t{200}, std::string("a,b \"q\""), 1e-300, false, 0.1 + 0.2});
  r.sections.push_back(s);
  r.sections.push_back(Section{"empty", {"x"}, {}});
  r.warnings = {"careful"};
  return r;
}

}  // namespace

TEST(Report, JsonRoundTripIsLossless) {
  const Report r = sample_report();
  const Report back = report_from_json(to_json(r));
  EXPECT_EQ(back, r);
  std::ostringstream a, b;
  write_json(a, r);
  write_json(b, report_from_json(nlohmann::ordered_json::parse(a.str())));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Report, JsonKeyOrderIsStable) {
  std::ostringstream os;
  write_json(os, sample_report());
  const std::string s = os.str();
  EXPECT_LT(s.find("\"command\""), s.find("\"version\""));
  EXPECT_LT(s.find("\"version\""), s.find("\"config\""));
  EXPECT_LT(s.find("\"seed\""), s.find("\"grid\""));
  EXPECT_LT(s.find("\"sections\""), s.find("\"warnings\""));
}

TEST(Report, MalformedJson) {
  EXPECT_THROW((void)report_from_json(nlohmann::ordered_json::parse("{\"command\": 1}")), Error);
}

TEST(Report, RowWidthChecked) {
  Section s{"s", {"a", "b"}, {}};
  EXPECT_THROW(s.add_row({1.0}), Error);
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_escape("two\nlines"), "\"two\nlines\"");
}

TEST(Report, CsvLayout) {
  std::ostringstream os;
  write_csv(os, sample_report());
  EXPECT_EQ(os.str(),
            "n,method,dev,pass,note\r\n"
            "100,classic,-0.0131,true,\r\n"
            "200,\"a,b \"\"q\"\"\",1e-300,false,0.30000000000000004\r\n"
            "\r\n"
            "x\r\n");
}

TEST(Report, TableLayout) {
  Report r;
  Section s{"thresholds", {"epsilon", "n_min_first"}, {}};
  s.add_row({0.01, std::monostate{}});
  s.add_row({0.123456789, std::int64_t{8757}});
  r.sections.push_back(s);
  std::ostringstream os;
  write_table(os, r);
  EXPECT_EQ(os.str(),
            "== thresholds ==\n"
            "epsilon   n_min_first\n"
            "0.01      n/a        \n"
            "0.123457  8757       \n");
}

TEST(Report, Formats) {
  EXPECT_EQ(parse_format("json"), OutputFormat::json);
  EXPECT_EQ(parse_format("csv"), OutputFormat::csv);
  EXPECT_EQ(parse_format("table"), OutputFormat::table);
  EXPECT_THROW((void)parse_format("xml"), Error);
}

TEST(Report, SectionLookup) {
  const Report r = sample_report();
  ASSERT_NE(r.section("empty"), nullptr);
  EXPECT_EQ(r.section("nope"), nullptr);
}
