#include "posedict/ply.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace posedict {

namespace {

const std::set<std::string> kIntegerTypes = {"char", "uchar", "int8", "uint8", "short", "ushort",
                                             "int16", "uint16", "int", "uint", "int32", "uint32"};
const std::set<std::string> kFloatTypes = {"float", "double", "float32", "float64"};

std::vector<std::string> split(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

class Reader {
public:
    Reader(const std::string& text, std::string name) : in_(text), name_(std::move(name)) {}

    std::optional<std::string> line()
    {
        std::string l;
        if (!std::getline(in_, l))
            return std::nullopt;
        ++line_no_;
        if (!l.empty() && l.back() == '\r')
            l.pop_back();
        return l;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw DataError(fmt::format("'{}' line {}: {}", name_, line_no_, why));
    }

private:
    std::istringstream in_;
    std::string name_;
    int line_no_ = 0;
};

double parse_number(const std::string& tok, Reader& reader)
{
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end)
        reader.fail(fmt::format("bad number '{}'", tok));
    return v;
}

} // namespace

TexturedCloud parse_ply(const std::string& text, const std::string& name)
{
    Reader reader(text, name);
    auto next = [&]() {
        auto l = reader.line();
        if (!l)
            reader.fail("unexpected end of file");
        return *l;
    };

    if (next() != "ply")
        reader.fail("missing 'ply' magic");

    bool have_format = false;
    std::optional<long> vertex_count;
    std::vector<std::string> order;
    std::string gray_type;
    for (;;) {
        const auto tokens = split(next());
        if (tokens.empty())
            reader.fail("blank header line");
        const std::string& key = tokens[0];
        if (key == "comment" || key == "obj_info")
            continue;
        if (key == "end_header")
            break;
        if (key == "format") {
            if (tokens.size() != 3 || tokens[1] != "ascii" || tokens[2] != "1.0")
                reader.fail("only 'format ascii 1.0' is supported");
            have_format = true;
        } else if (key == "element") {
            if (tokens.size() != 3 || tokens[1] != "vertex")
                reader.fail(fmt::format("unsupported element '{}'",
                                        tokens.size() > 1 ? tokens[1] : std::string{}));
            if (vertex_count)
                reader.fail("duplicate vertex element");
            long n = 0;
            auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), n);
            if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size() || n <= 0)
                reader.fail(fmt::format("bad vertex count '{}'", tokens[2]));
            vertex_count = n;
        } else if (key == "property") {
            if (!vertex_count)
                reader.fail("property before element");
            if (tokens.size() != 3)
                reader.fail("list properties are not supported");
            const std::string& type = tokens[1];
            const std::string& prop = tokens[2];
            if (!kIntegerTypes.contains(type) && !kFloatTypes.contains(type))
                reader.fail(fmt::format("unknown property type '{}'", type));
            if (prop != "x" && prop != "y" && prop != "z" && prop != "gray")
                reader.fail(fmt::format("unknown vertex property '{}'", prop));
            if (std::find(order.begin(), order.end(), prop) != order.end())
                reader.fail(fmt::format("duplicate property '{}'", prop));
            if (prop == "gray")
                gray_type = type;
            order.push_back(prop);
        } else {
            reader.fail(fmt::format("unknown header keyword '{}'", key));
        }
    }
    if (!have_format)
        reader.fail("missing format line");
    if (!vertex_count)
        reader.fail("missing vertex element");
    if (order.size() != 4)
        reader.fail("vertex element needs exactly x, y, z and gray");

    const bool integer_gray = kIntegerTypes.contains(gray_type);
    const Eigen::Index n = *vertex_count;
    Eigen::Matrix3Xd points(3, n);
    Eigen::VectorXd gray(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto tokens = split(next());
        if (tokens.size() != 4)
            reader.fail(fmt::format("expected 4 values, got {}", tokens.size()));
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = parse_number(tokens[k], reader);
            const std::string& prop = order[k];
            if (prop == "gray") {
                const double g = integer_gray ? v / 255.0 : v;
                if (!(g >= 0.0 && g <= 1.0))
                    reader.fail(fmt::format("gray value {} outside range", v));
                gray[i] = g;
            } else {
                points(prop == "x" ? 0 : prop == "y" ? 1 : 2, i) = v;
            }
        }
    }
    while (auto extra = reader.line()) {
        if (!split(*extra).empty())
            reader.fail("trailing data after vertex list");
    }
    try {
        return TexturedCloud(std::move(points), std::move(gray));
    } catch (const ConfigError& e) {
        throw DataError(fmt::format("'{}': {}", name, e.what()));
    }
}

TexturedCloud read_ply(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ply(ss.str(), path.string());
}

std::string format_ply(const TexturedCloud& cloud)
{
    std::string out = fmt::format(
        "ply\nformat ascii 1.0\nelement vertex {}\nproperty float x\nproperty float y\n"
        "property float z\nproperty float gray\nend_header\n",
        cloud.size());
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
        out += fmt::format("{} {} {} {}\n", cloud.points()(0, i), cloud.points()(1, i),
                           cloud.points()(2, i), cloud.intensities()[i]);
    return out;
}

void write_ply(const std::filesystem::path& path, const TexturedCloud& cloud)
{
    std::ofstream out(path);
    if (!out)
        throw DataError(fmt::format("cannot write '{}'", path.string()));
    out << format_ply(cloud);
}

} // namespace posedict
