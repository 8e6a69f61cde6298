#include "x0n/catalog.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <unistd.h>

namespace x0n {

namespace detail {
extern const char* const kEmbeddedSnapshot;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::string join_degrees(const std::vector<long>& d) {
    std::string s;
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s;
}

RefCurve parse_record(const std::string& line, size_t lineno) {
    auto where = [&] { return "snapshot line " + std::to_string(lineno) + ": "; };
    auto f = split(line, '|');
    if (f.size() != 4) fail(ErrorKind::ParseError, where() + "expected 4 fields");
    if (!valid_label(f[0])) fail(ErrorKind::ParseError, where() + "bad label '" + f[0] + "'");
    auto as = split(f[1], ',');
    if (as.size() != 5) fail(ErrorKind::ParseError, where() + "expected five a-invariants");
    std::array<Z, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = parse_integer(as[i]);
    std::vector<long> degs;
    for (const auto& d : split(f[3], ',')) {
        Z v = parse_integer(d);
        if (v < 1 || !v.fits_slong_p()) fail(ErrorKind::ParseError, where() + "bad isogeny degree");
        degs.push_back(v.get_si());
    }
    RefCurve c = make_ref_curve(f[0], a, degs);
    if (parse_rational(f[2]) != c.j) fail(ErrorKind::ParseError, where() + "j does not match the a-invariants");
    return c;
}

std::string default_cache_dir() {
    if (const char* c = std::getenv("X0N_CACHE_DIR"); c && *c) return c;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/x0n";
    if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/x0n";
    return ".x0n-cache";
}

} // namespace

RefCurve make_ref_curve(const std::string& label, const std::array<Z, 5>& a, std::vector<long> degrees) {
    const Z &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Z b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
    Z b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    Z c4 = b2 * b2 - 24 * b4, c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    Z disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) fail(ErrorKind::SingularCurve, "curve " + label + " is singular");
    RefCurve c;
    c.label = label;
    c.ainvs = a;
    c.A = Q(-27 * c4);
    c.B = Q(-54 * c6);
    c.j = make_q(c4 * c4 * c4, disc);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    c.isogeny_degrees = std::move(degrees);
    return c;
}

bool valid_label(const std::string& label) {
    static const std::regex re("[1-9][0-9]*\\.[a-z]+[1-9][0-9]*");
    return std::regex_match(label, re);
}

std::string cremona_label(const std::string& label) {
    std::string s = label;
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    return s;
}

Catalog Catalog::from_text(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    bool body = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (!body) cat.header_.push_back(t);
            continue;
        }
        body = true;
        cat.upsert(parse_record(t, lineno));
    }
    return cat;
}

Catalog Catalog::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read snapshot " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

const Catalog& Catalog::embedded() {
    static const Catalog cat = from_text(detail::kEmbeddedSnapshot);
    return cat;
}

std::optional<RefCurve> Catalog::find(const std::string& label) const {
    for (const auto& c : curves_)
        if (c.label == label) return c;
    return std::nullopt;
}

void Catalog::upsert(const RefCurve& c) {
    for (auto& e : curves_)
        if (e.label == c.label) {
            e = c;
            return;
        }
    curves_.push_back(c);
}

std::string Catalog::to_text() const {
    std::string out;
    for (const auto& h : header_) out += h + "\n";
    for (const auto& c : curves_) {
        out += c.label + " | ";
        for (int i = 0; i < 5; ++i) out += (i ? "," : "") + c.ainvs[i].get_str();
        out += " | " + to_pq_string(c.j) + " | " + join_degrees(c.isogeny_degrees) + "\n";
    }
    return out;
}

LmfdbSettings LmfdbSettings::from_env() {
    LmfdbSettings s;
    if (const char* e = std::getenv("X0N_LMFDB_ENDPOINT"); e && *e) s.endpoint = e;
    if (const char* t = std::getenv("X0N_LMFDB_TIMEOUT"); t && *t) {
        char* end = nullptr;
        double v = std::strtod(t, &end);
        if (end && *end == '\0' && v > 0) s.timeout_seconds = v;
    }
    s.cache_dir = default_cache_dir();
    return s;
}

Catalog load_catalog(const CatalogOptions& opt) {
    if (!opt.snapshot_path.empty()) return Catalog::from_file(opt.snapshot_path);
    std::string cached = LmfdbSettings::from_env().cache_dir + "/catalog_snapshot.txt";
    std::error_code ec;
    if (std::filesystem::exists(cached, ec)) return Catalog::from_file(cached);
    return Catalog::embedded();
}

RefCurve get_curve(const std::string& label, const CatalogOptions& opt) {
    if (!valid_label(label)) fail(ErrorKind::UnknownLabel, "malformed label '" + label + "'");
    if (auto c = load_catalog(opt).find(label)) return *c;
    if (!opt.online) fail(ErrorKind::UnknownLabel, "label " + label + " is not in the offline snapshot");
    if (opt.source) return opt.source->fetch(label);
    auto src = make_lmfdb_source(LmfdbSettings::from_env());
    return src->fetch(label);
}

void refresh_snapshot(const std::vector<std::string>& labels, const std::string& path, CurveSource& source) {
    if (labels.empty()) return;
    namespace fs = std::filesystem;
    std::error_code ec;
    Catalog cat = fs::exists(path, ec) ? Catalog::from_file(path) : Catalog::embedded();
    for (const auto& l : labels) {
        RefCurve c;
        try {
            c = source.fetch(l);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnknownLabel)
                fail(ErrorKind::SchemaMismatch, "label " + l + " is unknown to the data source");
            throw;
        }
        cat.upsert(c);
    }
    // round-trip before replacing anything
    std::string text = cat.to_text();
    Catalog::from_text(text);
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    static std::atomic<unsigned> counter{0};
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << text;
        out.flush();
        if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

const std::vector<long>& sporadic_levels() {
    static const std::vector<long> levels{11, 14, 15, 17, 19, 21, 27, 37, 43, 67, 163};
    return levels;
}

long expected_point_count(long N) {
    static const std::map<long, long> nu{{11, 3}, {14, 2}, {15, 4}, {17, 2}, {19, 1}, {21, 4},
                                         {27, 1}, {37, 2}, {43, 1}, {67, 1}, {163, 1}};
    auto it = nu.find(N);
    if (it == nu.end()) fail(ErrorKind::UnknownLevel, "level " + std::to_string(N) + " is not sporadic");
    return it->second;
}

} // namespace x0n
