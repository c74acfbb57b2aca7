#include "test_util.hpp"

#include "posedict/dictionary.hpp"

#include <gtest/gtest.h>

using namespace posedict;
using testutil::sample;

TEST(BuildDictionary, IdentityColumns)
{
    const std::vector<LabeledSample> in{{sample({1, 0}), "A"}, {sample({0, 1}), "B"}};
    const auto d = build_dictionary(in, false);
    EXPECT_EQ(d.dim(), 2);
    EXPECT_EQ(d.size(), 2);
    EXPECT_TRUE(d.columns().isApprox(Eigen::Matrix2d::Identity()));
    EXPECT_EQ(d.labels(), (std::vector<ClassId>{"A", "B"}));
    EXPECT_FALSE(d.normalized());
}

TEST(BuildDictionary, NormalizesThreeFourFive)
{
    const std::vector<LabeledSample> in{{sample({3, 4}), "A"}};
    const auto d = build_dictionary(in, true);
    EXPECT_DOUBLE_EQ(d.columns()(0, 0), 0.6);
    EXPECT_DOUBLE_EQ(d.columns()(1, 0), 0.8);
    EXPECT_TRUE(d.normalized());
}

TEST(BuildDictionary, RejectsBadInput)
{
    const std::vector<LabeledSample> mismatched{{Sample(Eigen::VectorXd::Ones(4)), "A"},
                                                {Sample(Eigen::VectorXd::Ones(5)), "B"}};
    EXPECT_THROW(build_dictionary(mismatched, false), DimensionError);
    EXPECT_THROW(build_dictionary(std::vector<LabeledSample>{}, true), ConfigError);
    const std::vector<LabeledSample> zero{{sample({0, 0}), "A"}};
    EXPECT_THROW(build_dictionary(zero, true), ConfigError);
    EXPECT_NO_THROW(build_dictionary(zero, false));
}

TEST(Sample, RejectsNonFiniteAndEmpty)
{
    EXPECT_THROW(Sample(Eigen::VectorXd()), ConfigError);
    Eigen::VectorXd v(2);
    v << 1.0, std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(Sample{v}, ConfigError);
}

TEST(BuildDictionary, ReadBackAndClassIndex)
{
    std::mt19937_64 gen(11);
    std::vector<LabeledSample> in;
    for (int j = 0; j < 9; ++j)
        in.push_back({Sample(testutil::random_vector(gen, 6)), testutil::class_name(j % 4)});
    const auto d = build_dictionary(in, true);
    for (std::size_t j = 0; j < in.size(); ++j) {
        const Eigen::VectorXd expect = in[j].sample.values().normalized();
        EXPECT_LT((d.columns().col(static_cast<Eigen::Index>(j)) - expect).norm(), 1e-15);
        EXPECT_NEAR(d.columns().col(static_cast<Eigen::Index>(j)).norm(), 1.0, 1e-9);
    }
    std::size_t covered = 0;
    for (const auto& [id, cols] : d.class_index()) {
        for (auto c : cols)
            EXPECT_EQ(d.labels()[c], id);
        covered += cols.size();
    }
    EXPECT_EQ(covered, in.size());
    EXPECT_EQ(d.classes(), (std::vector<ClassId>{"c00", "c01", "c02", "c03"}));
}

TEST(MergeDictionaries, AppendsColumnsPerClass)
{
    const std::vector<LabeledSample> a{{sample({1, 0}), "A"}, {sample({0, 1}), "B"}};
    const std::vector<LabeledSample> b{{sample({1, 1}), "A"}, {sample({1, -1}), "B"}};
    const auto m = merge_dictionaries(build_dictionary(a, false), build_dictionary(b, false));
    EXPECT_EQ(m.size(), 4);
    EXPECT_EQ(m.class_index().at("A"), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(m.class_index().at("B"), (std::vector<std::size_t>{1, 3}));
}

TEST(MergeDictionaries, EmptyAuxiliaryIsIdentity)
{
    const std::vector<LabeledSample> a{{sample({1, 0}), "A"}, {sample({0, 1}), "B"}};
    const auto d = build_dictionary(a, false);
    const auto m = merge_dictionaries(d, Dictionary{});
    EXPECT_EQ(m.columns(), d.columns());
    EXPECT_EQ(m.labels(), d.labels());
}

TEST(MergeDictionaries, RejectsMismatch)
{
    std::mt19937_64 gen(3);
    const auto p100 = testutil::random_dictionary(gen, 100, 2, 1);
    const auto p99 = testutil::random_dictionary(gen, 99, 2, 1);
    EXPECT_THROW(merge_dictionaries(p100, p99), DimensionError);
    const auto raw = testutil::random_dictionary(gen, 100, 2, 1, false);
    EXPECT_THROW(merge_dictionaries(p100, raw), ConfigError);
}

TEST(MergeDictionaries, AssociativeOnColumnOrder)
{
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = testutil::random_dictionary(gen, 7, 2, 2);
        const auto b = testutil::random_dictionary(gen, 7, 3, 1);
        const auto c = testutil::random_dictionary(gen, 7, 1, 3);
        const auto left = merge_dictionaries(merge_dictionaries(a, b), c);
        const auto right = merge_dictionaries(a, merge_dictionaries(b, c));
        EXPECT_EQ(left.columns(), right.columns());
        EXPECT_EQ(left.labels(), right.labels());
        EXPECT_EQ(left.class_index(), right.class_index());
    }
}

TEST(Dictionary, RestrictKeepsColumnOrder)
{
    std::mt19937_64 gen(8);
    const auto d = testutil::random_columns(gen, 5, 9, 3);
    const std::vector<ClassId> keep{"c02", "c00"};
    const auto r = d.restrict_to(keep);
    EXPECT_EQ(r.size(), 6);
    EXPECT_EQ(r.labels(), (std::vector<ClassId>{"c00", "c02", "c00", "c02", "c00", "c02"}));
    EXPECT_EQ(r.columns().col(1), d.columns().col(2));
    const std::vector<ClassId> unknown{"zz"};
    EXPECT_THROW(d.restrict_to(unknown), ConfigError);
}

TEST(Dictionary, FromPartsChecksNormalization)
{
    EXPECT_THROW(Dictionary::from_parts(Eigen::MatrixXd::Ones(2, 1), {"A"}, true), ConfigError);
    EXPECT_THROW(Dictionary::from_parts(Eigen::MatrixXd::Ones(2, 2), {"A"}, false), DimensionError);
}
