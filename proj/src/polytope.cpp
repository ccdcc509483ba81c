#include "bellext/polytope.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bellext/exact_rank.hpp"

namespace bellext {

Inequality::Inequality(const Scenario& s, std::vector<long long> c, long long bound)
    : scenario(s), coeffs(std::move(c)), local_bound(bound) {
    if (static_cast<int>(coeffs.size()) != s.correlator_dimension()) {
        throw std::invalid_argument("inequality coefficient vector has wrong dimension");
    }
}

double Inequality::evaluate(const CorrelatorVector& behavior) const {
    if (!(behavior.scenario == scenario) || behavior.values.size() != coeffs.size()) {
        throw std::invalid_argument("behavior dimension does not match inequality");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc += static_cast<double>(coeffs[i]) * behavior.values[i];
    }
    return acc;
}

long long Inequality::evaluate_exact(const std::vector<long long>& integer_behavior) const {
    if (integer_behavior.size() != coeffs.size()) {
        throw std::invalid_argument("behavior dimension does not match inequality");
    }
    long long acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * integer_behavior[i];
    return acc;
}

long long local_bound(const Inequality& ineq, const VertexSet& vs) {
    if (vs.products.empty()) throw std::invalid_argument("empty vertex set");
    long long best = ineq.evaluate_exact(vs.products.front());
    for (std::size_t i = 1; i < vs.products.size(); ++i) {
        best = std::max(best, ineq.evaluate_exact(vs.products[i]));
    }
    return best;
}

FacetReport verify_facet(const Inequality& ineq, const VertexSet& vs) {
    FacetReport report;
    report.max_value = local_bound(ineq, vs);
    report.valid = report.max_value <= ineq.local_bound;
    report.tight = report.max_value == ineq.local_bound;

    std::vector<std::vector<long long>> tight_vertices;
    for (const auto& v : vs.products) {
        if (ineq.evaluate_exact(v) == ineq.local_bound) tight_vertices.push_back(v);
    }
    report.n_tight_vertices = static_cast<int>(tight_vertices.size());
    report.tight_affine_dimension = integer_affine_dimension(tight_vertices);
    report.polytope_affine_dimension = integer_affine_dimension(vs.products);
    return report;
}

std::string default_table_path() {
    if (const char* env = std::getenv("BELLEXT_DATA")) {
        return std::string(env) + "/table1.csv";
    }
    return std::string(BELLEXT_DEFAULT_DATA_DIR) + "/table1.csv";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

long long parse_int_field(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("inequality table: bad integer in " + what + ": '" + s + "'");
    }
    if (pos != s.size()) {
        throw std::runtime_error("inequality table: bad integer in " + what + ": '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<Inequality> load_inequality_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open inequality table: " + path);

    const Scenario s = build_cycle_scenario(4);
    const int dim = s.correlator_dimension();

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("inequality table is empty: " + path);
    const auto header = split_csv_line(line);
    if (static_cast<int>(header.size()) != dim + 4 || header[0] != "id") {
        throw std::runtime_error("inequality table has unexpected header: " + path);
    }

    std::vector<Inequality> table;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != dim + 4) {
            throw std::runtime_error("inequality table: wrong field count at line " +
                                     std::to_string(line_no));
        }
        std::vector<long long> coeffs(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            coeffs[static_cast<std::size_t>(i)] =
                parse_int_field(fields[static_cast<std::size_t>(i + 2)], "coefficients");
        }
        Inequality ineq(s, std::move(coeffs),
                        parse_int_field(fields[static_cast<std::size_t>(dim + 2)], "beta_L"));
        ineq.id = static_cast<int>(parse_int_field(fields[0], "id"));
        if (!fields[1].empty()) {
            ineq.sliwa_class = static_cast<int>(parse_int_field(fields[1], "sliwa_class"));
        }
        const std::string& bq = fields[static_cast<std::size_t>(dim + 3)];
        char* end = nullptr;
        const double q = std::strtod(bq.c_str(), &end);
        if (end != bq.c_str() + bq.size() || bq.empty()) {
            throw std::runtime_error("inequality table: bad beta_Q at line " +
                                     std::to_string(line_no));
        }
        ineq.quantum_bound_ref = q;
        table.push_back(std::move(ineq));
    }

    if (table.size() != 26) {
        throw std::runtime_error("inequality table: expected 26 rows, got " +
                                 std::to_string(table.size()));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i].id || *table[i].id != static_cast<int>(i) + 1) {
            throw std::runtime_error("inequality table: ids must run 1..26 in order");
        }
    }
    return table;
}

const Inequality& table_row(const std::vector<Inequality>& table, int id) {
    for (const auto& ineq : table) {
        if (ineq.id && *ineq.id == id) return ineq;
    }
    throw std::out_of_range("no inequality with id " + std::to_string(id));
}

}  // namespace bellext
