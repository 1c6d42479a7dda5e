#pragma once

#include <span>
#include <string>

#include "trackrepair/confidence.hpp"
#include "trackrepair/repair.hpp"

namespace trackrepair {

// Class tallies for one side of the comparison. The incomplete row covers the
// whole middle band (incomplete and unreliable classes), giving the familiar
// complete / incomplete / noise summary.
struct ClassCounts {
    long complete = 0;
    long incomplete = 0;
    long noise = 0;

    long total() const { return complete + incomplete + noise; }
};

struct EvaluationReport {
    ClassCounts before;
    ClassCounts after;
    long fusionCount = 0;
    long cvIncreasedCount = 0;
};

ClassCounts tallyClasses(std::span<const double> confidenceValues);

// Builds the before/after report and checks the conservation rule
// totalAfter = totalBefore - fusionCount (ValidationError otherwise).
EvaluationReport evaluate(std::span<const double> cvBefore, std::span<const double> cvAfter,
                          std::span<const RepairResult> results);

// Aligned text table: one row per class plus totals, number and percentage
// columns for the without/with cases, then the fusion summary.
std::string renderReportText(const EvaluationReport& report);

// Machine-readable twin of the text table.
std::string renderReportCsv(const EvaluationReport& report);

}  // namespace trackrepair
