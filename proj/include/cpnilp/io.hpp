#ifndef CPNILP_IO_HPP
#define CPNILP_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cpnilp/cpmap.hpp"
#include "cpnilp/roots.hpp"

namespace cpnilp {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// On-disk instance: {"schema_version": "1", "kind": ..., "payload": ...}.
/// Complex scalars are [re, im] pairs; matrices are arrays of rows.
/// Unknown fields are rejected.
struct InstanceFile {
    std::variant<KrausMap, RootCandidate, std::vector<double>> payload;

    bool is_kraus_map() const { return std::holds_alternative<KrausMap>(payload); }
    bool is_root_candidate() const { return std::holds_alternative<RootCandidate>(payload); }
    bool is_vector() const { return std::holds_alternative<std::vector<double>>(payload); }
};

nlohmann::json complex_to_json(const Complex& z);
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InstanceFile& f);
InstanceFile instance_from_json(const nlohmann::json& j);

InstanceFile load_instance(std::istream& in);
InstanceFile load_instance_file(const std::string& path);  // "-" reads stdin
void save_instance_file(const InstanceFile& f, const std::string& path);

InstanceFile make_instance(const KrausMap& m);
InstanceFile make_instance(const RootCandidate& r);
InstanceFile make_instance(const std::vector<double>& v);

}  // namespace cpnilp

#endif
