#include "paaa/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace paaa
{
std::string format_real(Real x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace
{
std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::string_view rest(line);
    for (;;)
    {
        const auto c = rest.find(',');
        out.push_back(trim(rest.substr(0, c)));
        if (c == std::string_view::npos)
            break;
        rest.remove_prefix(c + 1);
    }
    return out;
}

Real parse_real(const std::string &field, std::size_t line, const std::string &column)
{
    Real v = 0;
    const char *first = field.data();
    const char *last = field.data() + field.size();
    if (!field.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || field.empty())
        throw FormatError("line " + std::to_string(line) + ", column " + column + ": cannot parse '" + field + "'");
    if (!std::isfinite(v))
        throw FormatError("line " + std::to_string(line) + ", column " + column + ": non-finite value");
    return v;
}

struct Layout
{
    Index d = 0;
    std::vector<int> z_re, z_im; // column positions, -1 when absent
    int f_re = -1, f_im = -1;
    std::vector<std::string> names;
};

Layout parse_header(const std::string &line, bool need_values)
{
    Layout l;
    l.names = split(line);
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < l.names.size(); ++i)
    {
        if (!pos.emplace(l.names[i], int(i)).second)
            throw FormatError("header repeats column '" + l.names[i] + "'");
    }
    while (pos.count("z" + std::to_string(l.d + 1) + "_re"))
        ++l.d;
    if (l.d == 0)
        throw FormatError("header has no z1_re column");
    for (Index j = 1; j <= l.d; ++j)
    {
        l.z_re.push_back(pos.at("z" + std::to_string(j) + "_re"));
        auto im = pos.find("z" + std::to_string(j) + "_im");
        l.z_im.push_back(im == pos.end() ? -1 : im->second);
    }
    if (auto it = pos.find("f_re"); it != pos.end())
        l.f_re = it->second;
    if (auto it = pos.find("f_im"); it != pos.end())
        l.f_im = it->second;
    if (need_values && l.f_re < 0)
        throw FormatError("header has no f_re column");
    for (const auto &[name, p] : pos)
    {
        bool known = name == "f_re" || name == "f_im";
        for (Index j = 1; j <= l.d && !known; ++j)
            known = name == "z" + std::to_string(j) + "_re" || name == "z" + std::to_string(j) + "_im";
        if (!known)
            throw FormatError("unknown header column '" + name + "'");
    }
    return l;
}

struct Table
{
    CMatrix points;
    CVector values;
    std::vector<std::size_t> lines;
};

Table read_table(std::istream &in, bool need_values)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (!trim(line).empty())
            break;
    }
    if (trim(line).empty())
        throw FormatError("missing header row");
    const Layout l = parse_header(line, need_values);

    std::vector<std::vector<Complex>> rows;
    std::vector<Complex> vals;
    Table t;
    while (std::getline(in, line))
    {
        ++lineno;
        if (trim(line).empty())
            continue;
        const auto f = split(line);
        if (f.size() != l.names.size())
            throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(l.names.size()) +
                              " fields, found " + std::to_string(f.size()));
        auto get = [&](int col) {
            return col < 0 ? 0.0 : parse_real(f[std::size_t(col)], lineno, l.names[std::size_t(col)]);
        };
        std::vector<Complex> z;
        for (Index j = 0; j < l.d; ++j)
            z.emplace_back(get(l.z_re[std::size_t(j)]), get(l.z_im[std::size_t(j)]));
        rows.push_back(std::move(z));
        vals.emplace_back(get(l.f_re), get(l.f_im));
        t.lines.push_back(lineno);
    }
    t.points.resize(Index(rows.size()), l.d);
    t.values.resize(Index(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        for (Index j = 0; j < l.d; ++j)
            t.points(Index(k), j) = rows[k][std::size_t(j)];
        t.values(Index(k)) = vals[k];
    }
    return t;
}

std::ifstream open_in(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

nlohmann::json complex_json(const Complex &z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from(const nlohmann::json &j, const std::string &where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(where + ": expected [re, im] pair");
    return {j[0].get<Real>(), j[1].get<Real>()};
}

CVector complex_list(const nlohmann::json &j, const std::string &where)
{
    if (!j.is_array())
        throw FormatError(where + ": expected a list of [re, im] pairs");
    CVector v(Index(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(Index(i)) = complex_from(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}
} // namespace

SampleSet read_samples_csv(std::istream &in)
{
    Table t = read_table(in, true);
    if (t.points.rows() == 0)
        throw FormatError("sample file has no data rows");
    std::map<std::vector<std::pair<Real, Real>>, std::size_t> seen;
    std::string dups;
    for (Index k = 0; k < t.points.rows(); ++k)
    {
        std::vector<std::pair<Real, Real>> key;
        for (Index j = 0; j < t.points.cols(); ++j)
            key.emplace_back(t.points(k, j).real(), t.points(k, j).imag());
        auto [it, inserted] = seen.emplace(key, t.lines[std::size_t(k)]);
        if (!inserted)
            dups += (dups.empty() ? "" : "; ") + std::string("line ") + std::to_string(t.lines[std::size_t(k)]) +
                    " repeats line " + std::to_string(it->second);
    }
    if (!dups.empty())
        throw FormatError("duplicate sample points: " + dups);
    return SampleSet{std::move(t.points), std::move(t.values)};
}

SampleSet load_samples(const std::filesystem::path &path)
{
    auto in = open_in(path);
    try
    {
        return read_samples_csv(in);
    }
    catch (const FormatError &e)
    {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_samples_csv(std::ostream &out, const SampleSet &samples)
{
    for (Index j = 1; j <= samples.dim(); ++j)
        out << 'z' << j << "_re,z" << j << "_im,";
    out << "f_re,f_im\n";
    for (Index k = 0; k < samples.size(); ++k)
    {
        for (Index j = 0; j < samples.dim(); ++j)
            out << format_real(samples.points(k, j).real()) << ',' << format_real(samples.points(k, j).imag()) << ',';
        out << format_real(samples.values(k).real()) << ',' << format_real(samples.values(k).imag()) << '\n';
    }
}

void save_samples(const SampleSet &samples, const std::filesystem::path &path)
{
    auto out = open_out(path);
    write_samples_csv(out, samples);
}

CMatrix read_points_csv(std::istream &in) { return read_table(in, false).points; }

CMatrix load_points(const std::filesystem::path &path)
{
    auto in = open_in(path);
    try
    {
        return read_points_csv(in);
    }
    catch (const FormatError &e)
    {
        throw FormatError(path.string() + ": " + e.what());
    }
}

nlohmann::json model_to_json(const BarycentricModel &model, const nlohmann::json &meta)
{
    nlohmann::json doc;
    doc["version"] = "1";
    doc["d"] = model.dim();
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto &axis : model.nodes().axes)
    {
        nlohmann::json a = nlohmann::json::array();
        for (Index i = 0; i < axis.size(); ++i)
            a.push_back(complex_json(axis(i)));
        nodes.push_back(std::move(a));
    }
    doc["nodes"] = std::move(nodes);
    for (const char *key : {"alpha", "beta"})
    {
        const CoeffTensor &t = std::string(key) == "alpha" ? model.alpha() : model.beta();
        nlohmann::json a = nlohmann::json::array();
        for (Index i = 0; i < t.size(); ++i)
            a.push_back(complex_json(t[i]));
        doc[key] = std::move(a);
    }
    if (!meta.is_null())
        doc["meta"] = meta;
    return doc;
}

BarycentricModel model_from_json(const nlohmann::json &doc)
{
    if (!doc.is_object())
        throw FormatError("model file: top level must be an object");
    if (!doc.contains("version"))
        throw FormatError("model file: missing field 'version'");
    if (!doc["version"].is_string() || doc["version"].get<std::string>() != "1")
        throw FormatError("model file: unsupported version " + doc["version"].dump() + " (expected \"1\")");
    for (const char *key : {"d", "nodes", "alpha", "beta"})
        if (!doc.contains(key))
            throw FormatError(std::string("model file: missing field '") + key + "'");
    if (!doc["d"].is_number_integer() || doc["d"].get<long long>() < 1)
        throw FormatError("model file: 'd' must be a positive integer");
    const Index d = doc["d"].get<Index>();
    const auto &jn = doc["nodes"];
    if (!jn.is_array() || Index(jn.size()) != d)
        throw FormatError("model file: 'nodes' must hold exactly d = " + std::to_string(d) + " axes");
    NodeAxes nodes;
    for (std::size_t j = 0; j < jn.size(); ++j)
    {
        CVector axis = complex_list(jn[j], "nodes[" + std::to_string(j) + "]");
        if (axis.size() == 0)
            throw FormatError("model file: nodes[" + std::to_string(j) + "] is empty");
        nodes.axes.push_back(std::move(axis));
    }
    const auto counts = nodes.counts();
    CVector alpha = complex_list(doc["alpha"], "alpha");
    CVector beta = complex_list(doc["beta"], "beta");
    if (alpha.size() != product(counts) || beta.size() != product(counts))
        throw FormatError("model file: 'alpha'/'beta' need " + std::to_string(product(counts)) +
                          " entries (product of node counts), found " + std::to_string(alpha.size()) + "/" +
                          std::to_string(beta.size()));
    try
    {
        return BarycentricModel(std::move(nodes), CoeffTensor(counts, std::move(alpha)),
                                CoeffTensor(counts, std::move(beta)));
    }
    catch (const std::invalid_argument &e)
    {
        throw FormatError(std::string("model file: ") + e.what());
    }
}

void save_model(const BarycentricModel &model, const std::filesystem::path &path, const nlohmann::json &meta)
{
    auto out = open_out(path);
    out << model_to_json(model, meta).dump(1) << '\n';
}

BarycentricModel load_model(const std::filesystem::path &path)
{
    auto in = open_in(path);
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw FormatError(path.string() + ": invalid JSON: " + e.what());
    }
    try
    {
        return model_from_json(doc);
    }
    catch (const FormatError &e)
    {
        throw FormatError(path.string() + ": " + e.what());
    }
}
} // namespace paaa
