#include <gtest/gtest.h>

#include "support.hpp"

using namespace m24rad;
using support::run;

namespace {

std::string cli(const std::string& args) { return std::string(M24RAD_CLI_PATH) + " " + args + " 2>/dev/null"; }

}  // namespace

TEST(Cli, CoefficientColumnJson) {
    auto r = run(cli("coeffs --class 2A --kind hg --order 3"));
    ASSERT_EQ(r.status, 0);
    Json j = Json::parse(r.out);
    std::string text = j.dump();
    EXPECT_NE(text.find("2A"), std::string::npos);
    EXPECT_NE(text.find("-6"), std::string::npos);
}

TEST(Cli, CoefficientColumnCsv) {
    auto r = run(cli("--format csv coeffs --class 5A --kind etainv --order 4"));
    ASSERT_EQ(r.status, 0);
    auto rows = csv_parse(r.out);
    ASSERT_GE(rows.size(), 2u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].size(), rows[0].size());
}

TEST(Cli, DecomposeExitStatus) {
    EXPECT_EQ(run(cli("decompose --kind hg --rows 4")).status, 0);
    EXPECT_EQ(run(cli("decompose --kind etainv --rows 4")).status, 0);
}

TEST(Cli, BadInputIsExitTwo) {
    EXPECT_EQ(run(cli("coeffs --class 9Z --order 3")).status, 2);
    EXPECT_EQ(run(cli("coeffs --class 2A --kind nope --order 3")).status, 2);
    EXPECT_EQ(run(cli("verify --class 1A --tol 0.7")).status, 2);
    EXPECT_NE(run(cli("no-such-command")).status, 0);
}

TEST(Cli, VerifyPassAndFail) {
    auto ok = run(cli("verify --class 1A --kmax 2"));
    EXPECT_EQ(ok.status, 0);
    Json j = Json::parse(ok.out);
    EXPECT_NE(j.dump().find("\"pass\":true"), std::string::npos);
    EXPECT_EQ(run(cli("verify --class 1A --kmax 2 --cmax 8 --cmin 1")).status, 1);
}

TEST(Cli, Diagnostics) {
    auto z = run(cli("--format csv diag zeta --n 1 --h 1 --cmax 64"));
    ASSERT_EQ(z.status, 0);
    auto rows = csv_parse(z.out);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"C", "value_re", "value_im", "increment"}));
    auto jac = run(cli("diag jacobi"));
    ASSERT_EQ(jac.status, 0);
    Json j = Json::parse(jac.out);
    EXPECT_LT(std::stod(j.at("residual").get<std::string>()), 1e-10);
}
