#include "cli.hpp"

#include "e2/cfrac.hpp"
#include "e2/survey.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace e2::cli {

namespace {

struct ProverFlags {
    Schedule s;

    void add(CLI::App* app) {
        app->add_option("--t0", s.t0, "initial translate bound T")->capture_default_str();
        app->add_option("--n0", s.n0, "initial denominator norm bound N")->capture_default_str();
        app->add_option("--cn", s.cn, "N grows as n0 * (1 + depth * cn); 0 freezes it")->capture_default_str();
        app->add_option("--max-depth", s.max_depth, "subdivision depth cap")->capture_default_str();
        app->add_option("--max-boxes", s.max_boxes, "box budget before giving up")->capture_default_str();
        app->add_flag("--skip-class-check", s.skip_class_check, "do not test the class number first");
    }
};

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return !in.bad();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int cmd_prove(long m, const std::string& out_path, const Schedule& s, std::ostream& out, std::ostream& err) {
    if (m < 2 || !is_squarefree(m)) {
        err << "error: m = " << m << " is not a squarefree integer >= 2\n";
        return bad_input;
    }
    Certificate cert;
    try {
        cert = prove(m, s);
    } catch (const ClassNumberError& e) {
        err << "error: " << e.what() << "\n";
        return class_number;
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    }
    std::string path = out_path.empty() ? "m" + std::to_string(m) + certificate_extension : out_path;
    if (!write_file(path, serialize(cert))) {
        err << "error: cannot write " << path << "\n";
        return unreadable;
    }
    out << smoothness_report(cert).csv_row() << "\n";
    err << "certificate written to " << path << "\n";
    return ok;
}

int load_certificate(const std::string& path, Certificate& cert, std::ostream& err) {
    std::string text;
    if (!read_file(path, text)) {
        err << "error: cannot read " << path << "\n";
        return unreadable;
    }
    try {
        cert = deserialize(text);
    } catch (const CertificateParseError& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return unreadable;
    }
    return ok;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    Certificate cert;
    if (int rc = load_certificate(path, cert, err)) return rc;
    VerificationReport rep = verify_certificate(cert);
    if (rep.accepted) {
        out << "accepted\n";
        return ok;
    }
    out << "rejected: check " << rep.check << ": " << rep.reason << " at " << rep.locus << "\n";
    return rejected;
}

int cmd_cfrac(const std::string& cert_path, const std::string& num, const std::string& den, long m_flag,
              bool verify, std::ostream& out, std::ostream& err) {
    Certificate cert;
    if (int rc = load_certificate(cert_path, cert, err)) return rc;
    if (m_flag != 0 && m_flag != cert.m) {
        err << "error: certificate is for m = " << cert.m << ", not " << m_flag << "\n";
        return mismatch;
    }
    VerificationReport rep = verify_certificate(cert);
    if (!rep.accepted) {
        err << "error: certificate does not certify Q(sqrt(" << cert.m << ")): " << rep.reason << " at " << rep.locus
            << "\n";
        return mismatch;
    }
    CertificateIndex index(cert);
    const QuadField& F = index.field();
    FieldElement x = F.integer(0), y = F.integer(0);
    try {
        x = FieldElement::parse(num, F.m);
        y = FieldElement::parse(den, F.m);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    if (y.is_zero()) {
        err << "error: zero denominator\n";
        return bad_input;
    }
    // Clear denominators so that both sides are integral.
    Integer l = 1;
    for (const Rational* r : {&x.a(), &x.b(), &y.a(), &y.b()}) l = lcm(l, r->denominator());
    FieldElement alpha = x * Rational(l);
    FieldElement beta = y * Rational(l);
    DivisionChain chain = division_chain(alpha, beta, index);
    ContinuedFraction cf = quotients_of(chain);
    out << format_cf(cf) << "\n";
    if (verify) {
        out << "value: " << eval_cf(cf).str() << "\n";
        out << "chain: " << (verify_chain(alpha, beta, chain) ? "valid" : "invalid") << "\n";
    }
    return ok;
}

int cmd_survey(long max_disc, const std::string& out_path, const std::string& svg_path, int jobs, const Schedule& s,
               std::ostream& out, std::ostream& err) {
    std::vector<SurveyRow> rows = run_survey(max_disc, s, jobs, &err);
    std::string csv = survey_csv(rows);
    if (out_path.empty()) {
        out << csv;
    } else if (!write_file(out_path, csv)) {
        err << "error: cannot write " << out_path << "\n";
        return unreadable;
    }
    if (!svg_path.empty() && !write_file(svg_path, survey_svg(rows))) {
        err << "error: cannot write " << svg_path << "\n";
        return unreadable;
    }
    bool all = std::all_of(rows.begin(), rows.end(), [](const SurveyRow& r) {
        return r.status == SurveyStatus::proved || r.status == SurveyStatus::class_number_not_one;
    });
    return all ? ok : inconclusive;
}

int cmd_smoothness_bound(long disc, std::ostream& out, std::ostream& err) {
    if (disc < 5) {
        err << "error: disc must be >= 5\n";
        return bad_input;
    }
    out << ennola_floor(Integer(disc)) << "\n";
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"2-stage euclidean certificates for real quadratic fields", "twostage"};
    app.require_subcommand(1);

    long m = 0;
    std::string out_path;
    ProverFlags prove_flags;
    auto* p = app.add_subcommand("prove", "search for a covering certificate of Q(sqrt m)");
    p->add_option("--m", m, "squarefree m >= 2")->required();
    p->add_option("--out", out_path, "certificate path (default m<m>.e2cert.json)");
    prove_flags.add(p);

    std::string verify_path;
    auto* v = app.add_subcommand("verify", "check a certificate independently");
    v->add_option("path", verify_path, "certificate file")->required();

    std::string cert_path, num, den;
    long cf_m = 0;
    bool cf_verify = false;
    auto* c = app.add_subcommand("cfrac", "continued fraction of num/den from a certificate");
    c->add_option("--cert", cert_path, "certificate file")->required();
    c->add_option("--num", num, "numerator as a/b,c/d")->required();
    c->add_option("--den", den, "denominator as a/b,c/d")->required();
    c->add_option("--m", cf_m, "expected field; must match the certificate");
    c->add_flag("--verify", cf_verify, "also print the re-evaluated value and chain verdict");

    long max_disc = 0;
    std::string csv_path, svg_path;
    int jobs = 1;
    ProverFlags survey_flags;
    auto* s = app.add_subcommand("survey", "prove every field with disc < max-disc");
    s->add_option("--max-disc", max_disc, "exclusive discriminant bound")->required();
    s->add_option("--out", csv_path, "CSV path (default standard output)");
    s->add_option("--svg", svg_path, "also write a scatter plot");
    s->add_option("--jobs", jobs, "fields proved in parallel")->capture_default_str();
    survey_flags.add(s);

    long disc = 0;
    auto* b = app.add_subcommand("smoothness-bound", "lower bound for n-smooth euclideanity from Ennola");
    b->add_option("--disc", disc, "field discriminant")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? ok : bad_input;
    }

    try {
        if (*p) return cmd_prove(m, out_path, prove_flags.s, out, err);
        if (*v) return cmd_verify(verify_path, out, err);
        if (*c) return cmd_cfrac(cert_path, num, den, cf_m, cf_verify, out, err);
        if (*s) return cmd_survey(max_disc, csv_path, svg_path, jobs, survey_flags.s, out, err);
        if (*b) return cmd_smoothness_bound(disc, out, err);
    } catch (const CertificateError& e) {
        err << "error: " << e.what() << "\n";
        return mismatch;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

}  // namespace e2::cli
