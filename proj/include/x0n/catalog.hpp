#ifndef X0N_CATALOG_HPP
#define X0N_CATALOG_HPP

#include "x0n/rational.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace x0n {

struct RefCurve {
    std::string label;  // dotted Cremona numbering, e.g. "121.a1"
    std::array<Z, 5> ainvs;
    Q A, B;  // y^2 = x^3 + A x + B, A = -27 c4, B = -54 c6
    Q j;
    std::vector<long> isogeny_degrees;
};

// Builds a RefCurve from a-invariants; j is computed, not trusted.
RefCurve make_ref_curve(const std::string& label, const std::array<Z, 5>& a, std::vector<long> degrees);

bool valid_label(const std::string& label);
// "121.a1" -> "121a1"
std::string cremona_label(const std::string& label);

class Catalog {
public:
    static const Catalog& embedded();
    static Catalog from_text(const std::string& text);  // ParseError on malformed lines
    static Catalog from_file(const std::string& path);

    std::optional<RefCurve> find(const std::string& label) const;
    const std::vector<RefCurve>& curves() const { return curves_; }
    void upsert(const RefCurve& c);
    std::string to_text() const;

private:
    std::vector<std::string> header_;
    std::vector<RefCurve> curves_;
};

// Fetches curve data by label. Errors: UnknownLabel, NetworkUnavailable, SchemaMismatch.
class CurveSource {
public:
    virtual ~CurveSource() = default;
    virtual RefCurve fetch(const std::string& label) = 0;
};

struct LmfdbSettings {
    std::string endpoint = "https://www.lmfdb.org/api/ec_curvedata/";
    double timeout_seconds = 10;
    std::string cache_dir;
    static LmfdbSettings from_env();  // X0N_LMFDB_ENDPOINT, X0N_LMFDB_TIMEOUT, X0N_CACHE_DIR
};

std::unique_ptr<CurveSource> make_lmfdb_source(const LmfdbSettings& s);
// Parses one LMFDB ec_curvedata JSON response for `label`.
RefCurve parse_lmfdb_response(const std::string& label, const std::string& body);

struct CatalogOptions {
    bool online = false;
    CurveSource* source = nullptr;   // used when online; defaults to the LMFDB client
    std::string snapshot_path;       // empty: embedded snapshot (or the cached refresh, if present)
};

// Cached refresh, if one exists, else the embedded snapshot.
Catalog load_catalog(const CatalogOptions& opt = {});
RefCurve get_curve(const std::string& label, const CatalogOptions& opt = {});

// Fetches every label and rewrites the snapshot at `path` atomically. An empty list
// leaves the file untouched. A label the source does not know raises SchemaMismatch.
void refresh_snapshot(const std::vector<std::string>& labels, const std::string& path, CurveSource& source);

// Number of non-cuspidal rational points on X0(N) for the sporadic levels.
long expected_point_count(long N);
const std::vector<long>& sporadic_levels();

} // namespace x0n

#endif // X0N_CATALOG_HPP
