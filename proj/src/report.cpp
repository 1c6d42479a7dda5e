#include "trackrepair/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace trackrepair {

namespace {

std::string percentString(long count, long total) {
    if (total <= 0) {
        return "0.0";
    }
    if (count == total) {
        return "100";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f",
                  100.0 * static_cast<double>(count) / static_cast<double>(total));
    return buffer;
}

struct Row {
    std::string label;
    long before;
    long after;
};

std::vector<Row> reportRows(const EvaluationReport& report) {
    return {
        {"Complete trajectories", report.before.complete, report.after.complete},
        {"Incomplete trajectories", report.before.incomplete, report.after.incomplete},
        {"Noise", report.before.noise, report.after.noise},
        {"Total", report.before.total(), report.after.total()},
    };
}

}  // namespace

ClassCounts tallyClasses(std::span<const double> confidenceValues) {
    ClassCounts counts;
    for (const double cv : confidenceValues) {
        switch (classify(cv)) {
            case TrajectoryClass::Complete:
                ++counts.complete;
                break;
            case TrajectoryClass::Incomplete:
            case TrajectoryClass::Unreliable:
                ++counts.incomplete;
                break;
            case TrajectoryClass::Noise:
                ++counts.noise;
                break;
        }
    }
    return counts;
}

EvaluationReport evaluate(std::span<const double> cvBefore, std::span<const double> cvAfter,
                          std::span<const RepairResult> results) {
    EvaluationReport report;
    report.before = tallyClasses(cvBefore);
    report.after = tallyClasses(cvAfter);
    report.fusionCount = static_cast<long>(results.size());
    for (const auto& result : results) {
        if (result.cvAfter > result.cvBefore) {
            ++report.cvIncreasedCount;
        }
    }
    if (report.after.total() != report.before.total() - report.fusionCount) {
        throw ValidationError("report conservation violated: " + std::to_string(report.after.total()) +
                              " != " + std::to_string(report.before.total()) + " - " +
                              std::to_string(report.fusionCount));
    }
    return report;
}

std::string renderReportText(const EvaluationReport& report) {
    const long beforeTotal = report.before.total();
    const long afterTotal = report.after.total();

    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-26s%-26s%s\n", "", "Without the algorithm",
                  "With the algorithm");
    out << line;
    std::snprintf(line, sizeof(line), "%-26s%-10s%-16s%-10s%s\n", "", "Number", "Percentage (%)",
                  "Number", "Percentage (%)");
    out << line;
    for (const auto& row : reportRows(report)) {
        std::snprintf(line, sizeof(line), "%-26s%-10ld%-16s%-10ld%s\n", row.label.c_str(),
                      row.before, percentString(row.before, beforeTotal).c_str(), row.after,
                      percentString(row.after, afterTotal).c_str());
        out << line;
    }
    out << "\nFusions: " << report.fusionCount
        << " (confidence increased in " << report.cvIncreasedCount << ")\n";
    return out.str();
}

std::string renderReportCsv(const EvaluationReport& report) {
    const long beforeTotal = report.before.total();
    const long afterTotal = report.after.total();

    std::ostringstream out;
    out << "row,without_number,without_pct,with_number,with_pct\n";
    const char* keys[] = {"complete", "incomplete", "noise", "total"};
    const auto rows = reportRows(report);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << keys[i] << ',' << rows[i].before << ',' << percentString(rows[i].before, beforeTotal)
            << ',' << rows[i].after << ',' << percentString(rows[i].after, afterTotal) << '\n';
    }
    out << "fusions," << report.fusionCount << ",,,\n";
    out << "cv_increased," << report.cvIncreasedCount << ",,,\n";
    return out.str();
}

}  // namespace trackrepair
