#include <gtest/gtest.h>

#include <sstream>

#include "stirling/io.hpp"

using namespace stirling;

TEST(TriangleCsv, Rendering) {
    EXPECT_EQ(io::triangle_csv(triangle_by_recurrence(2)), "n,i,count\n1,1,1\n2,1,1\n2,2,2\n");
}

TEST(TriangleJson, Rendering) {
    EXPECT_EQ(io::triangle_json(triangle_by_recurrence(3)), "[\n  [1],\n  [1, 2],\n  [1, 8, 6]\n]\n");
}

TEST(TriangleFormats, RoundTripIsByteIdentical) {
    // Row 120 has entries far beyond 64 bits.
    const auto t = triangle_by_recurrence(120);
    const std::string csv = io::triangle_csv(t);
    EXPECT_EQ(io::parse_triangle_csv(csv), t);
    EXPECT_EQ(io::triangle_csv(io::parse_triangle_csv(csv)), csv);
    const std::string json = io::triangle_json(t);
    EXPECT_EQ(io::parse_triangle_json(json), t);
    EXPECT_EQ(io::triangle_json(io::parse_triangle_json(json)), json);
}

TEST(TriangleFormats, RejectMalformedInput) {
    EXPECT_THROW(io::parse_triangle_csv("n,i,c\n"), io::FormatError);
    EXPECT_THROW(io::parse_triangle_csv("n,i,count\n1,1,1\n2,2,2\n"), io::FormatError);
    EXPECT_THROW(io::parse_triangle_csv("n,i,count\n1,1,1\n2,1,1\n"), io::FormatError);
    EXPECT_THROW(io::parse_triangle_json("[[1], [1]]"), io::FormatError);
    EXPECT_THROW(io::parse_triangle_json("[[1], [1, "), io::FormatError);
}

TEST(CertificateJson, RoundTrip) {
    for (std::size_t n : {1U, 2U, 9U, 40U}) {
        const auto cert = certify_real_roots(n);
        const std::string text = io::certificate_json(cert);
        const auto parsed = io::parse_certificate_json(text);
        EXPECT_EQ(parsed.n, n);
        EXPECT_EQ(parsed.distinct_real_root_count, n);
        EXPECT_TRUE(parsed.squarefree);
        EXPECT_TRUE(parsed.verified);
        EXPECT_EQ(parsed.isolating_intervals, cert.isolating_intervals);
        EXPECT_EQ(io::certificate_json(parsed), text);
    }
}

TEST(CertificateJson, OrderTwoLayout) {
    const std::string text = io::certificate_json(certify_real_roots(2));
    EXPECT_NE(text.find("\"count\": 2"), std::string::npos);
    EXPECT_NE(text.find("\"verified\": true"), std::string::npos);
    // root 0 sits in an interval closed at 0/1
    EXPECT_NE(text.find(", 0, 1]"), std::string::npos);
}

TEST(MomentsFormats, RoundTrip) {
    std::vector<io::MomentsRecord> records;
    for (std::size_t n = 1; n <= 30; ++n) {
        const auto m = moments_exact(n);
        io::MomentsRecord r{n, m.mean, m.variance, m.second_moment, std::nullopt, std::nullopt};
        if (n >= 2) r.ks_exact = ks_distance_exact(n);
        if (n % 7 == 0) r.ks_empirical = 0.1 / static_cast<double>(n);
        records.push_back(r);
    }
    const std::string json = io::moments_json(records);
    EXPECT_EQ(io::parse_moments_json(json), records);
    EXPECT_EQ(io::moments_json(io::parse_moments_json(json)), json);
    const std::string csv = io::moments_csv(records);
    EXPECT_EQ(io::parse_moments_csv(csv), records);
    EXPECT_EQ(io::moments_csv(io::parse_moments_csv(csv)), csv);
}

TEST(MomentsFormats, OrderTwoFields) {
    const auto m = moments_exact(2);
    const std::vector<io::MomentsRecord> records{{2, m.mean, m.variance, m.second_moment, std::nullopt, std::nullopt}};
    EXPECT_EQ(io::moments_json(records), "[\n  {\"n\": 2, \"mean\": [5, 3], \"variance\": [2, 9], \"s_n\": [3, 1]}\n]\n");
    EXPECT_NE(io::moments_csv(records).find("2,5/3,2/9,3,"), std::string::npos);
}

TEST(Rationals, ParseRequiresLowestTerms) {
    EXPECT_EQ(io::parse_rational("-7/3"), make_rational(-7, 3));
    EXPECT_EQ(io::parse_rational("12"), 12);
    EXPECT_THROW(io::parse_rational("2/4"), io::FormatError);
    EXPECT_THROW(io::parse_rational("1/0"), io::FormatError);
    EXPECT_THROW(io::parse_rational("x"), io::FormatError);
}

TEST(TriangleCache, RoundTrip) {
    const auto rows = triangle_by_recurrence(60).rows();
    std::stringstream ss;
    io::write_triangle_cache(ss, rows);
    const std::string first = ss.str();
    EXPECT_EQ(first.substr(0, 41), "stirling-triangle-cache v1\n1 1:1\n2 1:1 1:");
    std::stringstream in(first);
    EXPECT_EQ(io::read_triangle_cache(in), rows);
}

TEST(TriangleCache, RejectsCorruption) {
    std::stringstream bad_header("nope\n");
    EXPECT_THROW(io::read_triangle_cache(bad_header), io::FormatError);
    std::stringstream bad_len("stirling-triangle-cache v1\n1 2:1\n");
    EXPECT_THROW(io::read_triangle_cache(bad_len), io::FormatError);
    std::stringstream bad_order("stirling-triangle-cache v1\n2 1:1 1:2\n");
    EXPECT_THROW(io::read_triangle_cache(bad_order), io::FormatError);
}
