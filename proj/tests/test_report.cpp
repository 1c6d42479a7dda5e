#include <doctest.h>

#include "trackrepair/report.hpp"

using namespace trackrepair;

namespace {

bool containsAll(const std::string& haystack, std::initializer_list<const char*> needles) {
    for (const char* needle : needles) {
        if (haystack.find(needle) == std::string::npos) {
            return false;
        }
    }
    return true;
}

std::string lineWith(const std::string& text, const std::string& label) {
    std::size_t start = text.find(label);
    REQUIRE(start != std::string::npos);
    const std::size_t end = text.find('\n', start);
    return text.substr(start, end - start);
}

}  // namespace

TEST_CASE("tallyClasses buckets the middle band together") {
    const std::vector<double> cvs = {0.9, 0.85, 0.7, 0.45, 0.3, 0.1, -0.2};
    const auto counts = tallyClasses(cvs);
    CHECK(counts.complete == 2);
    CHECK(counts.incomplete == 3);  // incomplete and unreliable classes
    CHECK(counts.noise == 2);
    CHECK(counts.total() == 7);
}

TEST_CASE("identical before and after with zero fusions renders identical columns") {
    const std::vector<double> cvs = {0.9, 0.6, 0.1, 0.4};
    const auto report = evaluate(cvs, cvs, {});
    CHECK(report.fusionCount == 0);
    const std::string text = renderReportText(report);
    const std::string complete = lineWith(text, "Complete trajectories");
    CHECK(complete.find("1") != std::string::npos);
    const std::string csv = renderReportCsv(report);
    CHECK(csv.find("complete,1,25.0,1,25.0") != std::string::npos);
    CHECK(csv.find("incomplete,2,50.0,2,50.0") != std::string::npos);
    CHECK(csv.find("noise,1,25.0,1,25.0") != std::string::npos);
    CHECK(csv.find("total,4,100,4,100") != std::string::npos);
}

TEST_CASE("published-style figures render verbatim") {
    EvaluationReport report;
    report.before = ClassCounts{758, 3086, 4550};
    report.after = ClassCounts{795, 2778, 4481};
    report.fusionCount = 340;
    report.cvIncreasedCount = 337;
    REQUIRE(report.before.total() == 8394);
    REQUIRE(report.after.total() == 8054);

    const std::string text = renderReportText(report);
    CHECK(containsAll(lineWith(text, "Complete trajectories"), {"758", "9.0", "795", "9.9"}));
    CHECK(containsAll(lineWith(text, "Incomplete trajectories"), {"3086", "36.8", "2778", "34.5"}));
    CHECK(containsAll(lineWith(text, "Noise"), {"4550", "54.2", "4481", "55.6"}));
    CHECK(containsAll(lineWith(text, "Total"), {"8394", "100", "8054", "100"}));
    CHECK(containsAll(lineWith(text, "Fusions"), {"340", "337"}));

    const std::string csv = renderReportCsv(report);
    CHECK(csv.find("complete,758,9.0,795,9.9") != std::string::npos);
    CHECK(csv.find("incomplete,3086,36.8,2778,34.5") != std::string::npos);
    CHECK(csv.find("noise,4550,54.2,4481,55.6") != std::string::npos);
    CHECK(csv.find("total,8394,100,8054,100") != std::string::npos);
    CHECK(csv.find("fusions,340") != std::string::npos);
    CHECK(csv.find("cv_increased,337") != std::string::npos);
}

TEST_CASE("evaluate enforces the conservation rule") {
    const std::vector<double> before = {0.9, 0.6, 0.1, 0.4};
    const std::vector<double> after = {0.9, 0.6, 0.1};
    std::vector<RepairResult> oneFusion(1);
    oneFusion[0].cvBefore = 0.3;
    oneFusion[0].cvAfter = 0.7;
    const auto report = evaluate(before, after, oneFusion);
    CHECK(report.fusionCount == 1);
    CHECK(report.cvIncreasedCount == 1);
    CHECK(report.after.total() == report.before.total() - report.fusionCount);

    // mismatched totals are rejected
    CHECK_THROWS_AS(evaluate(before, before, oneFusion), ValidationError);
}
