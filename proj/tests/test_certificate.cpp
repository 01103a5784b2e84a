#include "e2/covering.hpp"
#include "mutations.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace e2;

namespace {

const Certificate& cert_for(long m) {
    static std::map<long, Certificate> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, prove(m)).first;
    return it->second;
}

}  // namespace

TEST_CASE("serialization is canonical and round-trips") {
    for (long m : {2L, 5L, 13L}) {
        const Certificate& c = cert_for(m);
        std::string text = serialize(c);
        Certificate back = deserialize(text);
        CHECK(back == c);
        CHECK(serialize(back) == text);
    }
    std::string t2 = serialize(cert_for(2));
    CHECK(t2.rfind("{\"m\":2,\"disc\":8,\"T\":", 0) == 0);
    CHECK(t2.back() == '\n');
    CHECK(t2.find(' ') == std::string::npos);
    // key order and spacing in the input do not matter for parsing
    Certificate c = deserialize(R"({ "leaves": [ {"region": 0, "path": ""} ], "regions": [
        {"q2": ["1", "0"], "center": ["0", "0"]} ], "N": 1, "T": 1, "disc": 8, "m": 2 })");
    CHECK(c.m == 2);
    CHECK(c.regions.size() == 1);
    CHECK(c.leaves.size() == 1);
    CHECK(serialize(c) == R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":["0","0"],"q2":["1","0"]}],"leaves":[{"path":"","region":0}]})"
                          "\n");
}

TEST_CASE("a zero q2 parses and is then rejected at check 2") {
    Certificate c = deserialize(
        R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":["0","0"],"q2":["0","0"]}],"leaves":[{"path":"","region":0}]})");
    VerificationReport r = verify_certificate(c);
    CHECK(!r.accepted);
    CHECK(r.check == 2);
    CHECK(r.locus == "regions[0]");
}

TEST_CASE("parse errors carry a position") {
    std::string text = serialize(cert_for(5));
    CHECK_THROWS_AS(deserialize(text.substr(0, text.size() / 2)), CertificateParseError);
    CHECK_THROWS_AS(deserialize(""), CertificateParseError);
    try {
        deserialize("{\"m\": 2,\n  \"disc\": 8,\n  \"T\": @}");
        FAIL("expected a parse error");
    } catch (const CertificateParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 8);
    }
    for (const char* bad : {
             "[]",
             R"({"m":2})",
             R"({"m":"2","disc":8,"T":1,"N":1,"regions":[],"leaves":[]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":["0"],"q2":["1","0"]}],"leaves":[]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":["0","1/0"],"q2":["1","0"]}],"leaves":[]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":["0","2/4"],"q2":["1","0"]}],"leaves":[]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[{"center":[0,0],"q2":["1","0"]}],"leaves":[]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[],"leaves":[{"path":3,"region":0}]})",
             R"({"m":2,"disc":8,"T":1,"N":1,"regions":[],"leaves":[{"path":"3"}]})",
         })
        CHECK_THROWS_AS(deserialize(bad), CertificateParseError);
}

TEST_CASE("genuine certificates are accepted") {
    for (long m : {2L, 3L, 5L, 13L, 14L}) {
        VerificationReport r = verify_certificate(cert_for(m));
        CHECK(r.accepted);
        CHECK(r.check == 0);
    }
    // splitting a leaf into its four children keeps the certificate valid
    Certificate c = cert_for(5);
    CertLeaf l = c.leaves.back();
    c.leaves.pop_back();
    for (char q : {'0', '1', '2', '3'}) c.leaves.push_back({l.path + q, l.region});
    CHECK(verify_certificate(c).accepted);
    // leaf order in the file does not matter
    Certificate r = cert_for(13);
    std::reverse(r.leaves.begin(), r.leaves.end());
    CHECK(verify_certificate(r).accepted);
}

TEST_CASE("every mutation is rejected at the right check and locus") {
    for (long m : {5L, 13L}) {
        auto battery = testing::mutations_of(cert_for(m));
        CHECK(battery.size() >= 20);
        for (const auto& mu : battery) {
            CAPTURE(m);
            CAPTURE(mu.name);
            VerificationReport r = verify_certificate(mu.cert);
            CHECK(!r.accepted);
            CHECK(r.check == mu.check);
            CHECK(!mu.locus.empty());
            CHECK(r.locus == mu.locus);
        }
    }
}

TEST_CASE("smoothness_report") {
    SmoothnessReport r2 = smoothness_report(cert_for(2));
    CHECK(r2.m == 2);
    CHECK(r2.disc == 8);
    CHECK(r2.max_denominator_norm == 1);
    CHECK(r2.ennola_floor == 1);
    SmoothnessReport r14 = smoothness_report(cert_for(14));
    CHECK(r14.max_denominator_norm >= 2);
    for (long m : {2L, 5L, 13L, 14L}) {
        const Certificate& c = cert_for(m);
        SmoothnessReport r = smoothness_report(c);
        std::set<long> used;
        long depth = 0;
        for (const CertLeaf& l : c.leaves) {
            used.insert(l.region);
            depth = std::max(depth, static_cast<long>(l.path.size()));
        }
        CHECK(r.region_count == static_cast<long>(used.size()));
        CHECK(r.max_depth == depth);
        CHECK(r.max_denominator_norm >= r.ennola_floor);
    }
    CHECK(std::string(SmoothnessReport::csv_header) == "m,disc,max_denominator_norm,region_count,max_depth,ennola_floor");
    CHECK(r2.csv_row() == "2,8,1," + std::to_string(r2.region_count) + "," + std::to_string(r2.max_depth) + ",1");
}

TEST_CASE("ennola_floor") {
    CHECK(ennola_floor(8) == 1);
    CHECK(ennola_floor(1000) == 2);
    CHECK(ennola_floor(20000) == 3);
    for (long d = 5; d <= 76; ++d) CHECK(ennola_floor(d) == 1);
    // the thresholds sit at floor((472 + 192 sqrt 6) t^4): 942 for t = 1, 15076 for t = 2
    CHECK(ennola_floor(942) == 1);
    CHECK(ennola_floor(943) == 2);
    CHECK(ennola_floor(15076) == 2);
    CHECK(ennola_floor(15077) == 3);
    long prev = 1;
    for (long d = 5; d < 200000; d += 97) {
        long f = ennola_floor(d);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK_THROWS_AS(ennola_floor(4), std::invalid_argument);
}
