#include "cohfrac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cohfrac::io {

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

Matrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(what) + ": matrix must be a nonempty array of rows");
    const auto rows = j.size();
    Matrix m(rows, rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != rows)
            throw ParseError(std::string(what) + ": matrix rows must all have length " +
                             std::to_string(rows));
        for (std::size_t c = 0; c < rows; ++c) {
            const json& entry = row[c];
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_number() || !entry[1].is_number())
                throw ParseError(std::string(what) + ": entries must be [re, im] pairs");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(std::string("channel: missing numeric field \"") + key + "\"");
    return j[key].get<double>();
}

} // namespace

DensityMatrix state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("matrix"))
        throw ParseError("state: expected object with \"dim\" and \"matrix\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
        throw ParseError("state: \"dim\" must be a positive integer");
    const int d = j["dim"].get<int>();
    Matrix m = matrix_from_json(j["matrix"], "state");
    if (m.rows() != d)
        throw ParseError("state: \"dim\" disagrees with the matrix size");
    return make_density_matrix(m);
}

json state_to_json(const DensityMatrix& rho) {
    return {{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix load_state(const std::string& path) {
    return state_from_json(parse_file(path));
}

Channel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("channel: expected object with a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "depolarizing")
        return make_channel(ChannelSpec::depolarizing(number_field(j, "p")));
    if (kind == "bit_flip")
        return make_channel(ChannelSpec::bit_flip(number_field(j, "p")));
    if (kind == "gad")
        return make_channel(
            ChannelSpec::gad(number_field(j, "p"), number_field(j, "gamma")));
    if (kind == "self_complementary")
        return make_channel(ChannelSpec::self_complementary(
            number_field(j, "theta"), number_field(j, "phi")));
    if (kind == "unitary") {
        if (!j.contains("axis") || !j["axis"].is_array() ||
            j["axis"].size() != 3)
            throw ParseError("channel: unitary needs \"axis\" = [x, y, z]");
        Eigen::Vector3d axis;
        for (int k = 0; k < 3; ++k) {
            if (!j["axis"][k].is_number())
                throw ParseError("channel: axis components must be numbers");
            axis(k) = j["axis"][k].get<double>();
        }
        return make_channel(ChannelSpec::unitary(axis, number_field(j, "angle")));
    }
    if (kind == "identity") {
        if (!j.contains("dim") || !j["dim"].is_number_integer())
            throw ParseError("channel: identity needs integer \"dim\"");
        return make_channel(ChannelSpec::identity(j["dim"].get<int>()));
    }
    if (kind == "kraus") {
        if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty())
            throw ParseError("channel: kraus needs a nonempty \"ops\" array");
        std::vector<Matrix> ops;
        ops.reserve(j["ops"].size());
        for (const json& op : j["ops"])
            ops.push_back(matrix_from_json(op, "channel"));
        if (j.contains("dim") && j["dim"].is_number_integer() &&
            j["dim"].get<int>() != static_cast<int>(ops.front().rows()))
            throw ParseError("channel: \"dim\" disagrees with the operator size");
        return make_channel(ops);
    }
    throw ParseError("channel: unknown kind \"" + kind + "\"");
}

json channel_to_json(const Channel& c) {
    if (c.spec) {
        const ChannelSpec& s = *c.spec;
        switch (s.kind) {
            case ChannelKind::depolarizing:
                return {{"kind", "depolarizing"}, {"p", s.p}};
            case ChannelKind::bit_flip:
                return {{"kind", "bit_flip"}, {"p", s.p}};
            case ChannelKind::gad:
                return {{"kind", "gad"}, {"p", s.p}, {"gamma", s.gamma}};
            case ChannelKind::self_complementary:
                return {{"kind", "self_complementary"},
                        {"theta", s.theta},
                        {"phi", s.phi}};
            case ChannelKind::unitary:
                return {{"kind", "unitary"},
                        {"axis", {s.axis(0), s.axis(1), s.axis(2)}},
                        {"angle", s.angle}};
            case ChannelKind::identity:
                return {{"kind", "identity"}, {"dim", s.dim}};
            case ChannelKind::kraus:
                break;
        }
    }
    json ops = json::array();
    for (const Matrix& k : c.kraus) ops.push_back(matrix_to_json(k));
    return {{"kind", "kraus"}, {"dim", c.dim}, {"ops", std::move(ops)}};
}

Channel load_channel(const std::string& path) {
    return channel_from_json(parse_file(path));
}

std::string format_sig(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    return buf;
}

} // namespace cohfrac::io
