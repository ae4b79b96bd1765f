#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <zlib.h>

#include "helpers.hpp"
#include "travesty/traffic_ingest.hpp"

using namespace travesty;

namespace {

// 42-field rows shaped like the raw KDD format: logged_in at index 11, label last.
std::string kdd_row(const std::string& login, const std::string& label) {
    std::string row;
    for (int i = 0; i < 42; ++i) {
        if (i) row += ',';
        if (i == 11)
            row += login;
        else if (i == 41)
            row += label;
        else
            row += "0";
    }
    return row + "\n";
}

std::string write_gzip_temp(const std::string& content) {
    const std::string path = "ingest_test_tmp.gz";
    gzFile file = gzopen(path.c_str(), "wb");
    REQUIRE(file != nullptr);
    REQUIRE(gzwrite(file, content.data(), static_cast<unsigned>(content.size())) ==
            static_cast<int>(content.size()));
    gzclose(file);
    return path;
}

}  // namespace

TEST_SUITE("traffic-ingest") {

TEST_CASE("default schema parses raw-format rows") {
    std::string data;
    data += kdd_row("1", "normal.");
    data += kdd_row("0", "normal.");
    data += kdd_row("1", "smurf.");
    data += kdd_row("0", "neptune.");
    data += kdd_row("0", "smurf.");
    std::istringstream in(data);
    const TrafficSummary summary = parse_records(in, RecordSchema{});
    CHECK(summary.total_records == 5);
    CHECK(summary.normal_records == 2);
    CHECK(summary.attack_records == 3);
    CHECK(summary.normal_login_success == 1);
    CHECK(summary.attack_login_success == 1);
    CHECK(summary.skipped_rows == 0);
}

TEST_CASE("count round trip through a synthesized stream") {
    const std::string data = testing::synthetic_records(523, 41, 311, 212);
    std::istringstream in(data);
    const TrafficSummary summary = parse_records(in, testing::compact_schema());
    CHECK(summary.attack_records == 523);
    CHECK(summary.attack_login_success == 41);
    CHECK(summary.normal_records == 311);
    CHECK(summary.normal_login_success == 212);
    CHECK(summary.total_records == 834);
}

TEST_CASE("parsing is order-independent") {
    std::vector<std::string> rows{"x,1,neptune.", "x,0,normal.", "x,1,normal.", "x,0,neptune.", "x,1,neptune."};
    TrafficSummary forward, backward;
    {
        std::string data;
        for (const auto& row : rows) data += row + "\n";
        std::istringstream in(data);
        forward = parse_records(in, testing::compact_schema());
    }
    {
        std::string data;
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) data += *it + "\n";
        std::istringstream in(data);
        backward = parse_records(in, testing::compact_schema());
    }
    CHECK(forward.total_records == backward.total_records);
    CHECK(forward.attack_login_success == backward.attack_login_success);
    CHECK(forward.normal_login_success == backward.normal_login_success);
}

TEST_CASE("strict and lenient failure handling") {
    RecordSchema schema = testing::compact_schema();

    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_records(in, schema), ParseError);
    }
    SUBCASE("non-binary login field in strict mode names the line") {
        schema.strict = true;
        std::istringstream in("x,1,normal.\nx,2,normal.\n");
        try {
            parse_records(in, schema);
            FAIL("expected a parse error");
        } catch (const ParseError& error) {
            CHECK(error.line_number == 2);
        }
    }
    SUBCASE("lenient mode counts skips") {
        std::istringstream in("x,1,normal.\nx,2,normal.\nshort\nx,0,neptune.\n");
        const TrafficSummary summary = parse_records(in, schema);
        CHECK(summary.total_records == 2);
        CHECK(summary.skipped_rows == 2);
    }
    SUBCASE("labels outside the configured classes") {
        schema.attack_labels = {"neptune."};
        std::istringstream lenient("x,1,neptune.\nx,1,teardrop.\nx,0,normal.\n");
        const TrafficSummary summary = parse_records(lenient, schema);
        CHECK(summary.attack_records == 1);
        CHECK(summary.skipped_rows == 1);

        schema.strict = true;
        std::istringstream strict("x,1,teardrop.\n");
        CHECK_THROWS_AS(parse_records(strict, schema), ParseError);
    }
}

TEST_CASE("summaries merge associatively") {
    const std::string data = testing::synthetic_records(200, 17, 100, 61);
    const std::size_t cut = data.find('\n', data.size() / 2) + 1;  // split on a line boundary
    std::istringstream whole(data), left(data.substr(0, cut)), right(data.substr(cut));
    const TrafficSummary all = parse_records(whole, testing::compact_schema());
    const TrafficSummary combined =
        merge(parse_records(left, testing::compact_schema()), parse_records(right, testing::compact_schema()));
    CHECK(all.total_records == combined.total_records);
    CHECK(all.attack_records == combined.attack_records);
    CHECK(all.normal_records == combined.normal_records);
    CHECK(all.attack_login_success == combined.attack_login_success);
    CHECK(all.normal_login_success == combined.normal_login_success);
}

TEST_CASE("estimation from the published subset counts") {
    TrafficSummary summary;
    summary.attack_records = 396093;
    summary.attack_login_success = 3298;
    summary.normal_records = 97928;
    summary.normal_login_success = 69939;
    summary.total_records = 494021;

    const auto [belief, model] = estimate_model(summary);
    CHECK(belief.pH1 == doctest::Approx(396093.0 / 494021.0).epsilon(1e-15));
    CHECK(belief.pH1 == doctest::Approx(0.801773).epsilon(1e-6));
    CHECK(attack_success_rate(summary) == doctest::Approx(0.0083263).epsilon(1e-5));
    CHECK(normal_success_rate(summary) == doctest::Approx(0.714187).epsilon(1e-6));

    // s=0 is login success, s=1 failure
    CHECK(model.f1(0) == doctest::Approx(3298.0 / 396093.0).epsilon(1e-15));
    CHECK(model.f0(0) == doctest::Approx(69939.0 / 97928.0).epsilon(1e-15));
    CHECK_NOTHROW(validate(model));

    // the quoted rounded theta0 is NOT reproduced by the counts; the gap is real
    CHECK(kQuotedTheta0 - normal_success_rate(summary) == doctest::Approx(0.004813).epsilon(1e-4));

    SUBCASE("empty class is an estimation error") {
        TrafficSummary broken = summary;
        broken.normal_records = 0;
        CHECK_THROWS_AS(estimate_model(broken), ValidationError);
    }
}

TEST_CASE("quoted preset matches the rounded parameters") {
    const SignalModel model = quoted_case_model();
    CHECK(model.f1(1) == doctest::Approx(0.008).epsilon(1e-15));
    CHECK(model.f0(1) == doctest::Approx(0.719).epsilon(1e-15));
    CHECK(quoted_case_belief().pH1 == doctest::Approx(0.802).epsilon(1e-15));
}

TEST_CASE("gzip input is transparently inflated") {
    const std::string data = testing::synthetic_records(40, 3, 25, 18);
    const std::string path = write_gzip_temp(data);
    const std::string loaded = load_text_auto(path);
    CHECK(loaded == data);
    std::remove(path.c_str());

    SUBCASE("concatenated gzip members") {
        const std::string first = write_gzip_temp("x,1,normal.\n");
        std::ifstream in1(first, std::ios::binary);
        std::ostringstream member1;
        member1 << in1.rdbuf();
        in1.close();
        std::remove(first.c_str());
        const std::string second = write_gzip_temp("x,0,neptune.\n");
        std::ifstream in2(second, std::ios::binary);
        std::ostringstream member2;
        member2 << in2.rdbuf();
        in2.close();
        std::remove(second.c_str());

        std::ofstream joined("ingest_test_multi.gz", std::ios::binary);
        joined << member1.str() << member2.str();
        joined.close();
        CHECK(load_text_auto("ingest_test_multi.gz") == "x,1,normal.\nx,0,neptune.\n");
        std::remove("ingest_test_multi.gz");
    }

    std::ofstream plain("ingest_test_tmp.txt", std::ios::binary);
    plain << data;
    plain.close();
    CHECK(load_text_auto("ingest_test_tmp.txt") == data);
    std::remove("ingest_test_tmp.txt");

    CHECK_THROWS_AS(load_text_auto("does_not_exist_anywhere.csv"), Error);
}

}  // TEST_SUITE
