// Generates the bundled eigenform coefficient files from eta-product
// expansions:
//   eigenform_11_2.json : level 11, weight 2,  a(n) of q prod (1-q^n)^2 (1-q^11n)^2
//   eigenform_32_2.json : level 32, weight 2,  a(n) of q prod (1-q^4n)^2 (1-q^8n)^2
// Coefficients fit comfortably in int64.  The expansion uses the pentagonal
// number sparse form of prod (1-q^n); the library's ingestion validates the
// output independently (multiplicativity + Hecke recursion).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace {

// Sparse expansion of prod_{n>=1} (1 - q^{scale*n}) up to q^D:
// sum over generalized pentagonal numbers j(3j-1)/2, j(3j+1)/2 with sign (-1)^j.
std::vector<std::pair<long, long>> euler_product_sparse(long scale, long D) {
    std::vector<std::pair<long, long>> terms;
    for (long j = 0;; ++j) {
        long p1 = j * (3 * j - 1) / 2, p2 = j * (3 * j + 1) / 2;
        long s = (j % 2 == 0) ? 1 : -1;
        bool any = false;
        if (p1 * scale <= D) { terms.push_back({p1 * scale, s}); any = true; }
        if (j > 0 && p2 * scale <= D) { terms.push_back({p2 * scale, s}); any = true; }
        if (!any) break;
    }
    return terms; // exponents strictly increasing
}

std::vector<int64_t> square_sparse(const std::vector<std::pair<long, long>>& sp, long D) {
    std::vector<int64_t> out(D + 1, 0);
    for (auto& [a, ca] : sp)
        for (auto& [b, cb] : sp) {
            if (a + b > D) break;
            out[a + b] += ca * cb;
        }
    return out;
}

std::vector<int64_t> multiply_sparse(const std::vector<int64_t>& dense,
                                     const std::vector<std::pair<long, long>>& sp, long D) {
    std::vector<int64_t> out(D + 1, 0);
    for (long n = 0; n <= D; ++n) {
        if (dense[n] == 0) continue;
        for (auto& [e, c] : sp) {
            if (n + e > D) break;
            out[n + e] += dense[n] * c;
        }
    }
    return out;
}

// q * E(q^s1)^2 * E(q^s2)^2 up to q^D, returned as a(1..D).
std::vector<int64_t> eta_square_pair(long s1, long s2, long D) {
    auto e1 = euler_product_sparse(s1, D);
    auto e2 = euler_product_sparse(s2, D);
    auto acc = square_sparse(e1, D);
    acc = multiply_sparse(acc, e2, D);
    acc = multiply_sparse(acc, e2, D);
    std::vector<int64_t> a(D + 1, 0);
    for (long n = 1; n <= D; ++n) a[n] = acc[n - 1];
    return a;
}

nlohmann::json emit(long level, long weight, const std::vector<int64_t>& a, long D) {
    nlohmann::json j;
    j["level"] = level;
    j["weight"] = weight;
    j["coeff_field_degree"] = 1;
    j["nebentypus"] = {{"modulus", 1},
                       {"values", nlohmann::json::array({nlohmann::json::array({0, 0, 1})})}};
    auto arr = nlohmann::json::array();
    for (long n = 1; n <= D; ++n) arr.push_back(nlohmann::json::array({n, a[n]}));
    j["coefficients"] = std::move(arr);
    return j;
}

bool check(const std::vector<int64_t>& a, const std::map<long, long>& expected,
           const char* name) {
    for (auto& [n, v] : expected)
        if (a[n] != v) {
            std::fprintf(stderr, "%s: a(%ld) = %lld, expected %ld\n", name, n,
                         (long long)a[n], v);
            return false;
        }
    return true;
}

void write_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    out << j.dump() << "\n";
    if (!out) {
        std::fprintf(stderr, "cannot write %s\n", path.c_str());
        std::exit(1);
    }
}

} // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";

    {
        const long D = 100000;
        auto a = eta_square_pair(1, 11, D);
        // Known coefficients of the level 11 weight 2 newform.
        std::map<long, long> expected = {{1, 1},  {2, -2}, {3, -1}, {4, 2},   {5, 1},
                                         {6, 2},  {7, -2}, {8, 0},  {9, -2},  {10, -2},
                                         {11, 1}, {19, 0}, {23, -1}};
        if (!check(a, expected, "eigenform_11_2")) return 1;
        write_file(dir + "/eigenform_11_2.json", emit(11, 2, a, D));
    }
    {
        const long D = 10000;
        auto a = eta_square_pair(4, 8, D);
        // Known coefficients of the level 32 weight 2 CM newform.
        std::map<long, long> expected = {{1, 1},  {2, 0},  {3, 0},  {5, -2},
                                         {9, -3}, {13, 6}, {25, -1}};
        if (!check(a, expected, "eigenform_32_2")) return 1;
        write_file(dir + "/eigenform_32_2.json", emit(32, 2, a, D));
    }
    std::puts("eigenform data written");
    return 0;
}
