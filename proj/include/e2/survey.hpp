#pragma once

// Discriminant surveys: one row per real quadratic field, as CSV.

#include "e2/covering.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace e2 {

enum class SurveyStatus { proved, inconclusive, class_number_not_one, not_squarefree };

std::string status_name(SurveyStatus s);
SurveyStatus parse_status(std::string_view text);

struct SurveyRow {
    long m = 0;
    long disc = 0;
    SurveyStatus status = SurveyStatus::inconclusive;
    // Present only for proved rows.
    std::optional<Integer> max_denominator_norm;
    std::optional<long> region_count;
    std::optional<long> max_depth;
    long wall_time_ms = 0;
    std::vector<long> inert_small_primes;  ///< primes < 20 inert in the field
};

inline constexpr const char* survey_csv_header =
    "m,disc,status,max_denominator_norm,region_count,max_depth,wall_time_ms,inert_small_primes";

/// Proves and verifies one field. Never throws for bad fields; the status says what happened.
SurveyRow survey_field(long m, const Schedule& schedule);

/// Squarefree m >= 2 with disc(m) < max_disc, sorted by disc.
std::vector<long> survey_fields(long max_disc);

/// Rows in discriminant order. With jobs > 1 fields run on that many threads;
/// the rows are the same either way apart from wall_time_ms. Skipped m are
/// reported on `log` when it is given.
std::vector<SurveyRow> run_survey(long max_disc, const Schedule& schedule, int jobs, std::ostream* log = nullptr);

std::string survey_csv_row(const SurveyRow& row);
std::string survey_csv(const std::vector<SurveyRow>& rows);
/// Inverse of survey_csv; throws std::invalid_argument on malformed input.
std::vector<SurveyRow> parse_survey_csv(std::string_view text);

/// Scatter of max_denominator_norm against disc for proved rows. Fields in
/// which 2 and 3 are both inert are drawn in a second colour.
std::string survey_svg(const std::vector<SurveyRow>& rows);

}  // namespace e2
