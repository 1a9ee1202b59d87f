#include "cpnilp/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace cpnilp {

namespace {

using nlohmann::json;

void require_fields(const json& j, const std::set<std::string>& required,
                    const std::set<std::string>& optional, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!required.count(key) && !optional.count(key))
            throw ParseError(where + ": unknown field '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex scalar must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Vec cvector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("complex vector must be an array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
    return v;
}

json cvector_to_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

KrausMap kraus_map_from_payload(const json& p) {
    require_fields(p, {"dim", "kraus"}, {}, "kraus_map payload");
    if (!p["dim"].is_number_integer() || p["dim"].get<int>() < 1)
        throw ParseError("kraus_map: dim must be a positive integer");
    const int n = p["dim"].get<int>();
    if (!p["kraus"].is_array() || p["kraus"].empty())
        throw ParseError("kraus_map: kraus must be a nonempty array");
    KrausMap m{n, {}};
    for (const auto& jm : p["kraus"]) {
        Mat L = matrix_from_json(jm);
        if (L.rows() != n || L.cols() != n)
            throw ParseError("kraus_map: every Kraus operator must be dim x dim");
        m.kraus.push_back(std::move(L));
    }
    return m;
}

json kraus_map_payload(const KrausMap& m) {
    json kraus = json::array();
    for (const Mat& L : m.kraus) kraus.push_back(matrix_to_json(L));
    return json{{"dim", m.dim}, {"kraus", std::move(kraus)}};
}

RootCandidate root_from_payload(const json& p) {
    require_fields(p, {"dim", "u", "p"}, {"kraus", "superoperator"}, "root_candidate payload");
    const int n = p["dim"].get<int>();
    RootCandidate r;
    r.u = cvector_from_json(p["u"]);
    if (r.u.size() != n) throw ParseError("root_candidate: u must have length dim");
    r.order_claim = p["p"].get<int>();
    if (r.order_claim < 1) throw ParseError("root_candidate: p must be >= 1");
    if (p.contains("kraus")) {
        json sub{{"dim", n}, {"kraus", p["kraus"]}};
        r.tau_kraus = kraus_map_from_payload(sub);
        r.tau = to_superoperator(*r.tau_kraus);
    } else if (p.contains("superoperator")) {
        Mat M = matrix_from_json(p["superoperator"]);
        if (M.rows() != n * n || M.cols() != n * n)
            throw ParseError("root_candidate: superoperator must be dim^2 x dim^2");
        r.tau = Superoperator{n, std::move(M)};
    } else {
        throw ParseError("root_candidate: need 'kraus' or 'superoperator'");
    }
    return r;
}

json root_payload(const RootCandidate& r) {
    json p{{"dim", r.tau.n}, {"u", cvector_to_json(r.u)}, {"p", r.order_claim}};
    if (r.tau_kraus) {
        json kraus = json::array();
        for (const Mat& K : r.tau_kraus->kraus) kraus.push_back(matrix_to_json(K));
        p["kraus"] = std::move(kraus);
    } else {
        p["superoperator"] = matrix_to_json(r.tau.matrix);
    }
    return p;
}

}  // namespace

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const size_t cols = j[0].size();
    Mat m(j.size(), cols);
    for (size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError("matrix rows must have equal lengths");
        for (size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

json to_json(const InstanceFile& f) {
    json j{{"schema_version", "1"}};
    if (const auto* m = std::get_if<KrausMap>(&f.payload)) {
        j["kind"] = "kraus_map";
        j["payload"] = kraus_map_payload(*m);
    } else if (const auto* r = std::get_if<RootCandidate>(&f.payload)) {
        j["kind"] = "root_candidate";
        j["payload"] = root_payload(*r);
    } else {
        j["kind"] = "vector";
        j["payload"] = json{{"entries", std::get<std::vector<double>>(f.payload)}};
    }
    return j;
}

InstanceFile instance_from_json(const json& j) {
    require_fields(j, {"schema_version", "kind", "payload"}, {}, "instance");
    if (j["schema_version"] != "1") throw ParseError("unsupported schema_version");
    const std::string kind = j["kind"].get<std::string>();
    InstanceFile f;
    if (kind == "kraus_map") {
        f.payload = kraus_map_from_payload(j["payload"]);
    } else if (kind == "root_candidate") {
        f.payload = root_from_payload(j["payload"]);
    } else if (kind == "vector") {
        require_fields(j["payload"], {"entries"}, {}, "vector payload");
        f.payload = j["payload"]["entries"].get<std::vector<double>>();
    } else {
        throw ParseError("unknown kind '" + kind + "'");
    }
    return f;
}

InstanceFile load_instance(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

InstanceFile load_instance_file(const std::string& path) {
    if (path == "-") return load_instance(std::cin);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_instance(in);
}

void save_instance_file(const InstanceFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << to_json(f).dump(2) << "\n";
}

InstanceFile make_instance(const KrausMap& m) { return InstanceFile{m}; }
InstanceFile make_instance(const RootCandidate& r) { return InstanceFile{r}; }
InstanceFile make_instance(const std::vector<double>& v) { return InstanceFile{v}; }

}  // namespace cpnilp
