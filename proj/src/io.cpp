#include "nlcseq/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlcseq {

namespace {

std::string format_millis(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

std::string format_stat(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("multisequence parse: bad " + what + " value '" +
                                 s + "'");
    }
}

}  // namespace

void write_multisequence(std::ostream& os, const Multisequence& S) {
    const Provenance& pv = S.prov;
    os << "# construction=" << pv.construction << "\n";
    os << "# q=" << pv.q << "\n";
    os << "# p=" << pv.p << "\n";
    os << "# k=" << pv.k << "\n";
    if (pv.construction == "rational") os << "# d=" << pv.d << "\n";
    if (pv.curve_q) os << "# curve_q=" << pv.curve_q << "\n";
    if (pv.construction == "hermitian-sigma")
        os << "# delta_index=" << pv.delta_index << "\n";
    if (pv.construction == "hermitian-phi")
        os << "# theta_index=" << pv.theta_index << "\n";
    if (pv.construction == "random") os << "# seed=" << pv.seed << "\n";
    os << "# N=" << pv.N << "\n";
    os << "# M=" << pv.M << "\n";
    if (pv.small_q_warning) os << "# warning=small-q\n";
    os << "# version=" << kToolVersion << "\n";
    for (const auto& row : S.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << row[j].v;
        }
        os << "\n";
    }
}

Multisequence read_multisequence(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::vector<std::vector<std::uint32_t>> data;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = 1;
            while (start < line.size() && line[start] == ' ') ++start;
            const std::size_t eq = line.find('=', start);
            if (eq == std::string::npos) continue;  // free-form comment
            kv[line.substr(start, eq - start)] = line.substr(eq + 1);
            continue;
        }
        std::vector<std::uint32_t> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ','))
            row.push_back(
                static_cast<std::uint32_t>(parse_u64(tok, "element index")));
        if (row.empty())
            throw std::runtime_error("multisequence parse: empty data line");
        data.push_back(std::move(row));
    }

    for (const char* key : {"construction", "q", "p", "k", "N", "M"})
        if (!kv.count(key))
            throw std::runtime_error(
                std::string("multisequence parse: missing header key '") + key +
                "'");

    Multisequence S;
    S.prov.construction = kv["construction"];
    S.prov.q = static_cast<std::uint32_t>(parse_u64(kv["q"], "q"));
    S.prov.p = static_cast<int>(parse_u64(kv["p"], "p"));
    S.prov.k = static_cast<int>(parse_u64(kv["k"], "k"));
    S.prov.N = static_cast<unsigned>(parse_u64(kv["N"], "N"));
    S.prov.M = static_cast<unsigned>(parse_u64(kv["M"], "M"));
    if (kv.count("d")) S.prov.d = static_cast<unsigned>(parse_u64(kv["d"], "d"));
    if (kv.count("curve_q"))
        S.prov.curve_q = static_cast<unsigned>(parse_u64(kv["curve_q"], "curve_q"));
    if (kv.count("delta_index"))
        S.prov.delta_index =
            static_cast<std::uint32_t>(parse_u64(kv["delta_index"], "delta_index"));
    if (kv.count("theta_index"))
        S.prov.theta_index =
            static_cast<std::uint32_t>(parse_u64(kv["theta_index"], "theta_index"));
    if (kv.count("seed")) S.prov.seed = parse_u64(kv["seed"], "seed");
    if (kv.count("warning")) S.prov.small_q_warning = kv["warning"] == "small-q";

    S.ctx = make_field(S.prov.p, S.prov.k);
    if (S.ctx->q() != S.prov.q)
        throw std::runtime_error("multisequence parse: q does not equal p^k");
    if (data.size() != S.prov.N)
        throw std::runtime_error("multisequence parse: expected N = " +
                                 std::to_string(S.prov.N) + " data lines, got " +
                                 std::to_string(data.size()));
    S.rows.reserve(data.size());
    for (const auto& raw : data) {
        if (raw.size() != data[0].size())
            throw std::runtime_error("multisequence parse: ragged data lines");
        std::vector<FieldElem> row;
        row.reserve(raw.size());
        for (std::uint32_t idx : raw) {
            if (idx >= S.prov.q)
                throw std::runtime_error(
                    "multisequence parse: element index " + std::to_string(idx) +
                    " out of range for q = " + std::to_string(S.prov.q));
            row.push_back({static_cast<std::uint16_t>(idx)});
        }
        S.rows.push_back(std::move(row));
    }
    return S;
}

void write_multisequence_file(const std::string& path, const Multisequence& S) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_multisequence(os, S);
    if (!os) throw std::runtime_error("write failed: " + path);
}

Multisequence read_multisequence_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_multisequence(is);
}

namespace {

const char* status_name(ComplexityResult::Status s) {
    return s == ComplexityResult::Status::Exact ? "exact" : "truncated";
}

}  // namespace

void write_report_csv(std::ostream& os, const SweepReport& report,
                      bool with_timing) {
    os << "construction,q,d_or_p,N,M,n,r,value,status,bound_num,bound_den,"
          "satisfied,millis\n";
    for (const auto& row : report.rows) {
        os << row.construction << ',' << row.q << ',' << row.d_or_p << ','
           << row.N << ',' << row.M << ',' << row.n << ',' << row.r << ','
           << row.result.value << ',' << status_name(row.result.status) << ',';
        if (row.has_bound)
            os << row.bound.num << ',' << row.bound.den << ','
               << (row.satisfied ? "true" : "false");
        else
            os << ",,";
        os << ',' << format_millis(with_timing ? row.millis : 0.0) << "\n";
    }
}

void write_report_json(std::ostream& os, const SweepReport& report,
                       bool with_timing) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json j;
        j["construction"] = row.construction;
        j["q"] = row.q;
        j["d_or_p"] = row.d_or_p;
        j["N"] = row.N;
        j["M"] = row.M;
        j["n"] = row.n;
        j["r"] = row.r;
        j["value"] = row.result.value;
        j["status"] = status_name(row.result.status);
        if (row.has_bound) {
            j["bound_num"] = row.bound.num;
            j["bound_den"] = row.bound.den;
            j["satisfied"] = row.satisfied;
        } else {
            j["bound_num"] = nullptr;
            j["bound_den"] = nullptr;
            j["satisfied"] = nullptr;
        }
        j["millis"] = with_timing ? row.millis : 0.0;
        rows.push_back(std::move(j));
    }
    os << rows.dump(2) << "\n";
}

void write_baseline_csv(std::ostream& os, const std::vector<BaselineStats>& rows) {
    os << "construction,q,m,n,r,trials,seed,mean,min,max,ln_mn,log2_mn,"
          "truncated\n";
    for (const auto& s : rows)
        os << "random," << s.q << ',' << s.m << ',' << s.n << ',' << s.r << ','
           << s.trials << ',' << s.seed << ',' << format_stat(s.mean) << ','
           << s.min << ',' << s.max << ',' << format_stat(s.ln_mn) << ','
           << format_stat(s.log2_mn) << ',' << s.truncated << "\n";
}

void write_baseline_json(std::ostream& os, const std::vector<BaselineStats>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : rows) {
        nlohmann::ordered_json j;
        j["construction"] = "random";
        j["q"] = s.q;
        j["m"] = s.m;
        j["n"] = s.n;
        j["r"] = s.r;
        j["trials"] = s.trials;
        j["seed"] = s.seed;
        j["mean"] = s.mean;
        j["min"] = s.min;
        j["max"] = s.max;
        j["ln_mn"] = s.ln_mn;
        j["log2_mn"] = s.log2_mn;
        j["truncated"] = s.truncated;
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << "\n";
}

}  // namespace nlcseq
