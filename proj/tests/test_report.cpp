#include <doctest.h>

#include "litterscope/charts.hpp"
#include "litterscope/csv.hpp"
#include "litterscope/manifest.hpp"
#include "litterscope/report.hpp"
#include "litterscope/svg.hpp"
#include "litterscope/text.hpp"
#include "oracles.hpp"

using namespace litterscope;

namespace {

std::vector<SurveyInstance> tiny_survey() {
  std::vector<SurveyInstance> s;
  const char* codes[] = {"G4", "G18", "G76", "G65"};
  for (int i = 0; i < 12; ++i) {
    SurveyInstance x;
    x.id = i + 1;
    x.gcode = GCode(codes[i % 4]);
    x.zone = i % 2 ? Zone::Backshore : Zone::Intertidal;
    x.pixels = 100 + i;
    x.area_m2 = static_cast<double>(x.pixels) * 0.0017 * 0.0017;
    x.x_m = i * 0.25;
    x.y_m = i * 1.5;
    s.push_back(x);
  }
  return s;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(2.89e-4) == "0.000289");
  CHECK(format_fixed(1.5, 2) == "1.5");
  CHECK(format_fixed(2.0, 2) == "2");
}

TEST_CASE("areas CSV round trips") {
  const auto s = tiny_survey();
  const auto text = areas_csv(s, Taxonomy::bundled());
  CHECK(text.rfind("id,gcode,group,zone,pixels,area_m2,centroid_x_m,centroid_y_m\n", 0) == 0);
  const auto back = parse_areas_csv(text);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back[i].id == s[i].id);
    CHECK(back[i].gcode == s[i].gcode);
    CHECK(back[i].zone == s[i].zone);
    CHECK(back[i].area_m2 == s[i].area_m2);
    CHECK(back[i].y_m == s[i].y_m);
  }
}

TEST_CASE("CSV headers") {
  const auto s = tiny_survey();
  const auto risk = analyze_risk(s, Taxonomy::bundled(), 3);
  CHECK(sectors_csv(risk.sectors).rfind(
            "sector,lower_m,upper_m,length_m,count,cci,eri,cci_norm,eri_norm\n", 0) == 0);
  const auto groups = compose(s, Taxonomy::bundled());
  const auto g = groups_csv(groups);
  CHECK(g.rfind("group,count,count_share,total_area_m2,area_share,mean_item_area_m2\n", 0) == 0);
  CHECK(parse_csv(g).size() == 4);
}

TEST_CASE("SVG output is well-formed and self-contained") {
  const auto s = tiny_survey();
  const auto& tax = Taxonomy::bundled();
  const auto areas = survey_areas(s);
  const auto binning = bin_areas(areas, build_bins(SurveyConfig{}));
  const std::vector<PowerLawFit> fits = {PowerLawFit{-2.0, 1.0, 0.99, 1e-6, 5, Segment::Macro}};
  const std::vector<std::string> docs = {
      npd_chart_svg(binning.bins, fits, 6.25e-4, "NPD <all> & more", "abc"),
      npd_chart_svg(binning.bins, {}, 6.25e-4, "", "abc"),
      sector_chart_svg(analyze_risk(s, tax, 4).sectors, "abc"),
      composition_chart_svg(compose(s, tax), "abc"),
  };
  for (const auto& d : docs) {
    CHECK(oracle::well_formed_xml(d));
    CHECK(d.find("href") == std::string::npos);
    CHECK(d.find("abc") != std::string::npos);
  }
  CHECK(docs[0].find("&lt;all&gt; &amp; more") != std::string::npos);
  CHECK_FALSE(oracle::well_formed_xml("<svg><g></svg>"));
}

TEST_CASE("run manifest identity") {
  RunManifest m;
  m.command = "areas";
  m.options["zone"] = "all";
  m.config = SurveyConfig{};
  m.add_input("a.json", "{}");
  const auto id = m.run_id();
  CHECK(id.size() == 64);
  CHECK(m.run_id() == id);
  m.options["zone"] = "backshore";
  CHECK(m.run_id() != id);
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto doc = m.document("2026-01-01T00:00:00Z", {});
  CHECK(doc.at("run_id") == m.run_id());
  CHECK(doc.at("timestamp") == "2026-01-01T00:00:00Z");
}
