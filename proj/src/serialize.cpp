#include "qdp/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace qdp {

namespace {

void reject_unknown_keys(const Json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& key : allowed) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError(where + ": unknown field \"" + it.key() + "\"");
        }
    }
}

double finite_number(const Json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ParseError(where + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(where + ": value is not finite");
    }
    return v;
}

} // namespace

Json matrix_to_json(const CMat& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMat matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    reject_unknown_keys(j, {"dim", "re", "im"}, where);
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw ParseError(where + ".dim: expected an integer");
    }
    const int dim = j["dim"].get<int>();
    if (dim < 1) {
        throw ParseError(where + ".dim: must be >= 1");
    }
    for (const char* part : {"re", "im"}) {
        if (!j.contains(part) || !j[part].is_array() ||
            static_cast<int>(j[part].size()) != dim) {
            throw ParseError(where + "." + part + ": expected " + std::to_string(dim) +
                             " rows");
        }
    }
    CMat m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const Json& re_row = j["re"][r];
        const Json& im_row = j["im"][r];
        if (!re_row.is_array() || static_cast<int>(re_row.size()) != dim ||
            !im_row.is_array() || static_cast<int>(im_row.size()) != dim) {
            throw ParseError(where + ": row " + std::to_string(r) + " has wrong length");
        }
        for (int c = 0; c < dim; ++c) {
            const std::string cell =
                where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            m(r, c) = {finite_number(re_row[c], cell + ".re"),
                       finite_number(im_row[c], cell + ".im")};
        }
    }
    return m;
}

Json channel_to_json(const KrausChannel& ch) {
    Json kraus = Json::array();
    for (const auto& k : ch.kraus()) {
        // Kraus operators may be rectangular; pad the wire matrix square.
        const int d = static_cast<int>(std::max(k.rows(), k.cols()));
        CMat padded = CMat::Zero(d, d);
        padded.topLeftCorner(k.rows(), k.cols()) = k;
        kraus.push_back(matrix_to_json(padded));
    }
    return Json{{"dim_in", ch.dim_in()},
                {"dim_out", ch.dim_out()},
                {"kraus", std::move(kraus)},
                {"label", ch.label()}};
}

KrausChannel channel_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("channel: expected an object");
    }
    reject_unknown_keys(j, {"dim_in", "dim_out", "kraus", "label"}, "channel");
    for (const char* key : {"dim_in", "dim_out"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw ParseError(std::string("channel.") + key + ": expected an integer");
        }
    }
    const int dim_in = j["dim_in"].get<int>();
    const int dim_out = j["dim_out"].get<int>();
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
        throw ParseError("channel.kraus: expected a nonempty array");
    }
    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) {
            throw ParseError("channel.label: expected a string");
        }
        label = j["label"].get<std::string>();
    }
    std::vector<CMat> kraus;
    for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
        const CMat padded =
            matrix_from_json(j["kraus"][i], "channel.kraus[" + std::to_string(i) + "]");
        if (padded.rows() != std::max(dim_in, dim_out)) {
            throw ParseError("channel.kraus[" + std::to_string(i) + "].dim: expected " +
                             std::to_string(std::max(dim_in, dim_out)));
        }
        kraus.push_back(padded.topLeftCorner(dim_out, dim_in));
    }
    try {
        return KrausChannel(std::move(kraus), std::move(label));
    } catch (const Error& e) {
        throw ParseError(std::string("channel.kraus: ") + e.what());
    }
}

Json relation_to_json(const NeighborRelation& rel) {
    Json out = Json::array();
    for (const auto& [rho, sigma] : rel.pairs()) {
        out.push_back(Json{{"rho", matrix_to_json(rho.mat())},
                           {"sigma", matrix_to_json(sigma.mat())}});
    }
    return out;
}

NeighborRelation relation_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("relation: expected a nonempty array of pairs");
    }
    std::vector<NeighborRelation::Pair> pairs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "relation[" + std::to_string(i) + "]";
        const Json& entry = j[i];
        if (!entry.is_object()) {
            throw ParseError(where + ": expected an object");
        }
        reject_unknown_keys(entry, {"rho", "sigma"}, where);
        if (!entry.contains("rho") || !entry.contains("sigma")) {
            throw ParseError(where + ": missing field \"rho\" or \"sigma\"");
        }
        try {
            pairs.emplace_back(
                DensityOperator(matrix_from_json(entry["rho"], where + ".rho")),
                DensityOperator(matrix_from_json(entry["sigma"], where + ".sigma")));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return NeighborRelation(std::move(pairs));
}

Json verdict_to_json(const Verdict& v) {
    return Json{{"pass", v.pass},
                {"worst_pair_index", v.worst_pair_index},
                {"worst_reversed", v.worst_reversed},
                {"margin", v.margin},
                {"witness", matrix_to_json(v.witness)}};
}

Json curve_to_json(const PrivacyCurve& curve) {
    Json out = Json::array();
    for (const auto& p : curve.points) {
        out.push_back(Json{{"eps", p.eps}, {"delta", p.delta}});
    }
    return out;
}

std::string curve_to_csv(const PrivacyCurve& curve) {
    std::string out = "eps,delta\n";
    char line[80];
    for (const auto& p : curve.points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.eps, p.delta);
        out += line;
    }
    return out;
}

Json violation_report_to_json(const ViolationReport& r) {
    return Json{{"found", r.found},
                {"worst_margin", r.worst_margin},
                {"worst_pair_index", r.worst_pair_index},
                {"worst_reversed", r.worst_reversed},
                {"worst_trial", r.worst_trial},
                {"trials", r.trials},
                {"seed", r.seed},
                {"witness", matrix_to_json(r.witness)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write file: " + path);
    }
    out << text;
}

KrausChannel load_channel(const std::string& path) {
    return channel_from_json(load_json_file(path));
}

NeighborRelation load_relation(const std::string& path) {
    return relation_from_json(load_json_file(path));
}

} // namespace qdp
