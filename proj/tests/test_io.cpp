#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"

using namespace paaa;
using namespace paaa::testing;

namespace
{
SampleSet parse(const std::string &text)
{
    std::istringstream in(text);
    return read_samples_csv(in);
}

std::string what_of(const std::string &text)
{
    try
    {
        parse(text);
    }
    catch (const FormatError &e)
    {
        return e.what();
    }
    return "";
}

// Values spanning many binades, including subnormals and negative zero.
Real awkward_real(Rng &rng)
{
    const Real mant = rng.uniform(-1, 1);
    const int e = int(rng.uniform(-330, 300));
    return std::ldexp(mant, e);
}

BarycentricModel random_model(Rng &rng)
{
    const Index d = 1 + Index(rng.uniform() * 3);
    std::vector<Index> counts;
    NodeAxes nodes(d);
    for (Index j = 0; j < d; ++j)
    {
        counts.push_back(1 + Index(rng.uniform() * 3));
        while (nodes.axes[std::size_t(j)].size() < counts.back())
            nodes.insert(j, Complex(awkward_real(rng), awkward_real(rng)));
    }
    const Index n = product(counts);
    CVector a(n), b(n);
    for (Index i = 0; i < n; ++i)
    {
        a(i) = Complex(awkward_real(rng), awkward_real(rng));
        b(i) = Complex(awkward_real(rng), awkward_real(rng));
    }
    return BarycentricModel(nodes, CoeffTensor(counts, a), CoeffTensor(counts, b));
}
} // namespace

TEST(SampleCsv, ParsesAnyColumnOrderAndRealOnly)
{
    const SampleSet s = parse("f_re,z2_re,z1_re,z1_im\n1.5,2,3,0.25\n-1,4,5,0\n");
    ASSERT_EQ(s.size(), 2);
    ASSERT_EQ(s.dim(), 2);
    EXPECT_EQ(s.points(0, 0), Complex(3, 0.25));
    EXPECT_EQ(s.points(0, 1), Complex(2, 0));
    EXPECT_EQ(s.values(1), Complex(-1, 0));

    const SampleSet t = parse("z1_re,f_re,f_im\n\n 1 , 2 , +3 \n\n");
    EXPECT_EQ(t.values(0), Complex(2, 3));
}

TEST(SampleCsv, Errors)
{
    EXPECT_NE(what_of("z1_re,f_re\n1,2\n1,3\n").find("line 3 repeats line 2"), std::string::npos);
    EXPECT_NE(what_of("z1_re,f_re\n1,abc\n").find("line 2"), std::string::npos);
    EXPECT_NE(what_of("z1_re,f_re\n1,nan\n").find("non-finite"), std::string::npos);
    EXPECT_NE(what_of("z1_re,f_re,zz\n1,2,3\n").find("unknown header column 'zz'"), std::string::npos);
    EXPECT_NE(what_of("z1_re,f_re\n1,2,3\n").find("expected 2 fields"), std::string::npos);
    EXPECT_NE(what_of("z1_re\n1\n").find("f_re"), std::string::npos);
    EXPECT_NE(what_of("z1_re,f_re\n").find("no data rows"), std::string::npos);
    EXPECT_NE(what_of("").find("missing header"), std::string::npos);
    EXPECT_NE(what_of("z2_re,f_re\n1,2\n").find("z1_re"), std::string::npos);
}

TEST(PointsCsv, IgnoresValues)
{
    std::istringstream in("z1_re,z2_re,z2_im\n0,1,2\n3,4,5\n");
    const CMatrix p = read_points_csv(in);
    ASSERT_EQ(p.rows(), 2);
    EXPECT_EQ(p(1, 1), Complex(4, 5));
}

TEST(FormatReal, ShortestRoundTrip)
{
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(-0.0), "-0");
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
    {
        const Real x = awkward_real(rng);
        EXPECT_EQ(std::stod(format_real(x)), x);
    }
}

TEST(RoundTrip, SamplesBitExact)
{
    Rng rng(20);
    for (int rep = 0; rep < 20; ++rep)
    {
        const Index d = 1 + Index(rng.uniform() * 3), K = 1 + Index(rng.uniform() * 30);
        SampleSet s{CMatrix(K, d), CVector(K)};
        for (Index k = 0; k < K; ++k)
        {
            for (Index j = 0; j < d; ++j)
                s.points(k, j) = Complex(awkward_real(rng), awkward_real(rng));
            s.values(k) = Complex(awkward_real(rng), awkward_real(rng));
        }
        std::stringstream buf;
        write_samples_csv(buf, s);
        const SampleSet back = read_samples_csv(buf);
        ASSERT_EQ(back.size(), K);
        for (Index k = 0; k < K; ++k)
        {
            for (Index j = 0; j < d; ++j)
            {
                EXPECT_EQ(std::signbit(back.points(k, j).real()), std::signbit(s.points(k, j).real()));
                EXPECT_EQ(back.points(k, j), s.points(k, j));
            }
            EXPECT_EQ(back.values(k), s.values(k));
        }
    }
}

TEST(RoundTrip, ModelBitExact)
{
    Rng rng(21);
    for (int rep = 0; rep < 20; ++rep)
    {
        const BarycentricModel m = random_model(rng);
        const BarycentricModel back = model_from_json(nlohmann::json::parse(model_to_json(m, {{"k", 1}}).dump()));
        ASSERT_EQ(back.dim(), m.dim());
        for (Index j = 0; j < m.dim(); ++j)
            EXPECT_EQ(back.nodes().axes[std::size_t(j)], m.nodes().axes[std::size_t(j)]);
        EXPECT_EQ(back.alpha().dims, m.alpha().dims);
        EXPECT_EQ(back.alpha().data, m.alpha().data);
        EXPECT_EQ(back.beta().data, m.beta().data);
    }
}

TEST(RoundTrip, ModelFile)
{
    Rng rng(22);
    const BarycentricModel m = random_model(rng);
    const auto path = std::filesystem::temp_directory_path() / "paaa_io_model_test.json";
    save_model(m, path);
    const BarycentricModel back = load_model(path);
    EXPECT_EQ(back.alpha().data, m.alpha().data);
    std::filesystem::remove(path);
    EXPECT_THROW(load_model(path), std::runtime_error);
}

TEST(ModelJson, Errors)
{
    Rng rng(23);
    const nlohmann::json good = model_to_json(random_model(rng));
    auto expect_error = [](const nlohmann::json &doc, const std::string &needle) {
        try
        {
            model_from_json(doc);
            ADD_FAILURE() << "no error for " << needle;
        }
        catch (const FormatError &e)
        {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    nlohmann::json v2 = good;
    v2["version"] = "2";
    expect_error(v2, "unsupported version \"2\"");
    nlohmann::json nov = good;
    nov.erase("version");
    expect_error(nov, "missing field 'version'");
    nlohmann::json nob = good;
    nob.erase("beta");
    expect_error(nob, "missing field 'beta'");
    nlohmann::json empty = good;
    empty["nodes"][0] = nlohmann::json::array();
    expect_error(empty, "nodes[0] is empty");
    nlohmann::json shape = good;
    shape["alpha"].push_back({1.0, 0.0});
    expect_error(shape, "'alpha'/'beta' need");
    nlohmann::json pair = good;
    pair["beta"][0] = {1.0};
    expect_error(pair, "beta[0]: expected [re, im] pair");
    expect_error(nlohmann::json::parse(R"({"version":"1","d":1,"nodes":[[[1,0],[1,0]]],
                                           "alpha":[[1,0],[1,0]],"beta":[[0,0],[0,0]]})"),
                 "duplicate barycentric node");
    expect_error(nlohmann::json::parse(R"({"version":"1","d":2,"nodes":[[[1,0]]],"alpha":[],"beta":[]})"),
                 "exactly d = 2 axes");
}
