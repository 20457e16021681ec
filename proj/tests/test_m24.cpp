#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>

#include "expected_tables.hpp"
#include "support.hpp"

using namespace m24rad;

namespace {

std::complex<double> value_of(const Alg& a) {
    return {a.re.get_d(), a.im.get_d() * std::sqrt(static_cast<double>(a.radical))};
}

}  // namespace

TEST(ClassData, Records) {
    EXPECT_EQ(all_classes().size(), 26u);
    const ClassRecord& b = class_data("2B");
    EXPECT_EQ(b.k, 6);
    EXPECT_EQ(b.n, 2);
    EXPECT_EQ(b.N, 4);
    EXPECT_EQ(b.h, 2);
    EXPECT_EQ(b.chi, 0);
    const ClassRecord& t = class_data("12B");
    EXPECT_EQ(t.k, 1);
    EXPECT_EQ(t.N, 144);
    EXPECT_EQ(t.h, 12);
    EXPECT_EQ(class_data("7A").chi, 3);
    EXPECT_EQ(class_data("7A").ttilde, "7AB");
    EXPECT_EQ(class_index("23B"), 25u);
    EXPECT_THROW(class_data("9Z"), std::invalid_argument);
    for (auto& c : all_classes()) {
        long total = 0, k2 = 0;
        for (auto& f : c.cycle_shape) {
            total += f.length * f.multiplicity;
            k2 += f.multiplicity;
        }
        EXPECT_EQ(total, 24) << c.name;
        EXPECT_EQ(2 * c.k, k2) << c.name;
        EXPECT_EQ(c.N, c.n * c.h) << c.name;
        long fixed = 0;
        for (auto& f : c.cycle_shape)
            if (f.length == 1) fixed = f.multiplicity;
        EXPECT_EQ(c.chi, fixed) << c.name;
    }
}

TEST(CharacterTable, Dimensions) {
    const CharTable& t = character_table();
    ASSERT_EQ(t.value.size(), 26u);
    std::vector<long> dims;
    Int order = 0;
    for (auto& row : t.value) {
        dims.push_back(row[0].re.get_num().get_si());
        order += row[0].re.get_num() * row[0].re.get_num();
    }
    EXPECT_EQ(dims[0], 1);
    EXPECT_EQ(dims[1], 23);
    EXPECT_EQ(dims[25], 10395);
    EXPECT_EQ(order, Int("244823040"));
    for (auto& v : t.value[0]) EXPECT_EQ(v, (Alg{Rat(1), Rat(0), 0}));
}

TEST(CharacterTable, ColumnOrthogonality) {
    const CharTable& t = character_table();
    for (std::size_t g = 0; g < 26; ++g)
        for (std::size_t h = 0; h < 26; ++h) {
            std::complex<double> s = 0;
            for (auto& row : t.value) s += value_of(row[g]) * std::conj(value_of(row[h]));
            if (g != h) {
                EXPECT_LT(std::abs(s), 1e-9) << g << "," << h;
            } else {
                EXPECT_GT(s.real(), 0.5);
            }
        }
    auto centraliser = [&](std::size_t g) {
        double s = 0;
        for (auto& row : t.value) s += std::norm(value_of(row[g]));
        return s;
    };
    EXPECT_NEAR(centraliser(1), 21504, 1e-6);
    EXPECT_NEAR(centraliser(2), 7680, 1e-6);
}

TEST(Decompose, CharactersAreUnitVectors) {
    const CharTable& t = character_table();
    for (std::size_t i = 0; i < t.value.size(); ++i) {
        Decomposition d = decompose(t.value[i]);
        for (std::size_t j = 0; j < d.multiplicity.size(); ++j) EXPECT_EQ(d.multiplicity[j], Rat(i == j ? 1 : 0));
    }
    EXPECT_THROW(decompose(std::vector<Rat>(3, Rat(0))), std::invalid_argument);
}

TEST(Decompose, FrozenPanels) {
    auto hg = decompose_table(series_table(SeriesKind::hg, 10));
    auto ei = decompose_table(series_table(SeriesKind::etainv, 10));
    for (std::size_t r = 0; r < 10; ++r) {
        EXPECT_TRUE(hg[r].integral);
        EXPECT_TRUE(ei[r].integral);
        EXPECT_TRUE(ei[r].nonnegative);
        for (std::size_t i = 0; i < 26; ++i) {
            EXPECT_EQ(hg[r].multiplicity[i], Rat(expected::hg_multiplicities[r][i])) << r << "," << i;
            EXPECT_EQ(ei[r].multiplicity[i], Rat(expected::etainv_multiplicities[r][i])) << r << "," << i;
        }
    }
    // q^{31/8}: twice the 2277-dimensional irreducible
    for (std::size_t i = 0; i < 26; ++i) EXPECT_EQ(hg[4].multiplicity[i], Rat(i == 19 ? 2 : 0));
    for (std::size_t r = 1; r < 10; ++r) EXPECT_TRUE(hg[r].nonnegative) << r;
}

TEST(Decompose, FloatingPointCrossCheck) {
    const CharTable& t = character_table();
    Eigen::MatrixXcd A(26, 26);
    for (std::size_t g = 0; g < 26; ++g)
        for (std::size_t i = 0; i < 26; ++i) A(g, i) = value_of(t.value[i][g]);
    auto table = series_table(SeriesKind::hg, 8);
    auto exact = decompose_table(table);
    for (std::size_t r = 0; r < 8; ++r) {
        Eigen::VectorXcd b(26);
        for (std::size_t g = 0; g < 26; ++g) b(g) = table[g][r].get_d();
        Eigen::VectorXcd m = A.fullPivLu().solve(b);
        EXPECT_LT((A * m - b).norm(), 1e-9);
        for (std::size_t i = 0; i < 26; ++i) {
            EXPECT_NEAR(m(i).real(), exact[r].multiplicity[i].get_d(), 1e-9);
            EXPECT_NEAR(m(i).imag(), 0.0, 1e-9);
        }
    }
}

TEST(Decompose, NonIntegralInputFlagged) {
    std::vector<Rat> v(26, Rat(0));
    v[0] = Rat(1);
    Decomposition d = decompose(v);
    EXPECT_FALSE(d.integral);
}
