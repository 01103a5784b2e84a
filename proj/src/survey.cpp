#include "e2/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

namespace e2 {

std::string status_name(SurveyStatus s) {
    switch (s) {
        case SurveyStatus::proved: return "proved";
        case SurveyStatus::inconclusive: return "inconclusive";
        case SurveyStatus::class_number_not_one: return "class_number_not_one";
        case SurveyStatus::not_squarefree: return "not_squarefree";
    }
    return "?";
}

SurveyStatus parse_status(std::string_view text) {
    for (SurveyStatus s : {SurveyStatus::proved, SurveyStatus::inconclusive, SurveyStatus::class_number_not_one,
                           SurveyStatus::not_squarefree})
        if (status_name(s) == text) return s;
    throw std::invalid_argument("unknown survey status '" + std::string(text) + "'");
}

SurveyRow survey_field(long m, const Schedule& schedule) {
    auto start = std::chrono::steady_clock::now();
    SurveyRow row;
    row.m = m;
    row.disc = discriminant_of(m);
    auto finish = [&]() -> SurveyRow {
        row.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                               .count();
        return row;
    };
    if (m < 2 || !is_squarefree(m)) {
        row.status = SurveyStatus::not_squarefree;
        return finish();
    }
    QuadField F = make_field(m);
    for (long p : {2, 3, 5, 7, 11, 13, 17, 19})
        if (splitting_type(F, p) == Splitting::inert) row.inert_small_primes.push_back(p);
    if (!class_number_is_one(F)) {
        row.status = SurveyStatus::class_number_not_one;
        return finish();
    }
    try {
        Certificate cert = prove(m, schedule);
        if (!verify_certificate(cert).accepted) {
            row.status = SurveyStatus::inconclusive;
            return finish();
        }
        SmoothnessReport rep = smoothness_report(cert);
        row.status = SurveyStatus::proved;
        row.max_denominator_norm = rep.max_denominator_norm;
        row.region_count = rep.region_count;
        row.max_depth = rep.max_depth;
    } catch (const InconclusiveError&) {
        row.status = SurveyStatus::inconclusive;
    } catch (const ClassNumberError&) {
        row.status = SurveyStatus::class_number_not_one;
    }
    return finish();
}

std::vector<long> survey_fields(long max_disc) {
    std::vector<long> ms;
    for (long m = 2; m < max_disc; ++m)
        if (is_squarefree(m) && discriminant_of(m) < max_disc) ms.push_back(m);
    std::sort(ms.begin(), ms.end(), [](long a, long b) { return discriminant_of(a) < discriminant_of(b); });
    return ms;
}

std::vector<SurveyRow> run_survey(long max_disc, const Schedule& schedule, int jobs, std::ostream* log) {
    std::mutex log_mutex;
    if (log) {
        for (long m = 2; m < max_disc; ++m)
            if (!is_squarefree(m) && discriminant_of(m) < max_disc) *log << "skipping m=" << m << ": not squarefree\n";
    }
    std::vector<long> ms = survey_fields(max_disc);
    std::vector<SurveyRow> rows(ms.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ms.size(); i = next++) {
            rows[i] = survey_field(ms[i], schedule);
            if (log) {
                std::lock_guard lock(log_mutex);
                *log << "m=" << rows[i].m << " disc=" << rows[i].disc << " " << status_name(rows[i].status) << " ("
                     << rows[i].wall_time_ms << " ms)\n";
            }
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string survey_csv_row(const SurveyRow& r) {
    std::ostringstream o;
    o << r.m << ',' << r.disc << ',' << status_name(r.status) << ',';
    if (r.max_denominator_norm) o << r.max_denominator_norm->get_str();
    o << ',';
    if (r.region_count) o << *r.region_count;
    o << ',';
    if (r.max_depth) o << *r.max_depth;
    o << ',' << r.wall_time_ms << ',';
    for (std::size_t i = 0; i < r.inert_small_primes.size(); ++i) o << (i ? ";" : "") << r.inert_small_primes[i];
    return o.str();
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
    std::string out = std::string(survey_csv_header) + "\n";
    for (const SurveyRow& r : rows) out += survey_csv_row(r) + "\n";
    return out;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

long to_long(const std::string& s) {
    Integer v = parse_integer(s);
    if (!v.fits_slong_p()) throw std::invalid_argument("integer out of range: " + s);
    return v.get_si();
}

}  // namespace

std::vector<SurveyRow> parse_survey_csv(std::string_view text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines[0] != survey_csv_header) throw std::invalid_argument("missing survey CSV header");
    std::vector<SurveyRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f = split(lines[i], ',');
        if (f.size() != 8) throw std::invalid_argument("survey CSV line " + std::to_string(i + 1) + " needs 8 fields");
        SurveyRow r;
        r.m = to_long(f[0]);
        r.disc = to_long(f[1]);
        r.status = parse_status(f[2]);
        if (!f[3].empty()) r.max_denominator_norm = parse_integer(f[3]);
        if (!f[4].empty()) r.region_count = to_long(f[4]);
        if (!f[5].empty()) r.max_depth = to_long(f[5]);
        r.wall_time_ms = to_long(f[6]);
        if (!f[7].empty())
            for (const std::string& p : split(f[7], ';')) r.inert_small_primes.push_back(to_long(p));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string survey_svg(const std::vector<SurveyRow>& rows) {
    const double W = 640, H = 400, L = 60, R = 20, T = 20, B = 50;
    long max_disc = 1;
    double max_norm = 1;
    for (const SurveyRow& r : rows) {
        max_disc = std::max(max_disc, r.disc);
        if (r.max_denominator_norm) max_norm = std::max(max_norm, r.max_denominator_norm->get_d());
    }
    auto px = [&](double d) { return L + (W - L - R) * d / static_cast<double>(max_disc); };
    auto py = [&](double n) { return H - B - (H - T - B) * n / max_norm; };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"12\">discriminant (max "
      << max_disc << ")</text>\n";
    o << "<text x=\"15\" y=\"" << H / 2 << "\" font-size=\"12\" transform=\"rotate(-90 15 " << H / 2
      << ")\" text-anchor=\"middle\">max denominator norm (max " << max_norm << ")</text>\n";
    for (const SurveyRow& r : rows) {
        if (r.status != SurveyStatus::proved || !r.max_denominator_norm) continue;
        auto& ip = r.inert_small_primes;
        bool both = std::count(ip.begin(), ip.end(), 2) && std::count(ip.begin(), ip.end(), 3);
        o << "<circle cx=\"" << px(static_cast<double>(r.disc)) << "\" cy=\"" << py(r.max_denominator_norm->get_d())
          << "\" r=\"3\" fill=\"" << (both ? "#c0392b" : "#2c3e50") << "\"><title>m=" << r.m << "</title></circle>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace e2
