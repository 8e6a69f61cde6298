#include "x0n/catalog.hpp"
#include "x0n/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <regex>

namespace x0n {

namespace {

using json = nlohmann::json;

Z json_integer(const json& v, const std::string& label, const char* field) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Z(v.get<unsigned long>()) : Z(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_integer(v.get<std::string>());
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::SchemaMismatch, "field '" + std::string(field) + "' of " + label + " is not an exact integer");
}

struct Endpoint {
    std::string base;  // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    static const std::regex re("(https?://[^/]+)(/.*)?");
    std::smatch m;
    if (!std::regex_match(url, m, re)) fail(ErrorKind::InvalidArgument, "bad LMFDB endpoint '" + url + "'");
    Endpoint e{m[1].str(), m[2].matched ? m[2].str() : "/"};
    if (e.path.back() != '/') e.path += '/';
    return e;
}

class LmfdbSource : public CurveSource {
public:
    explicit LmfdbSource(LmfdbSettings s) : settings_(std::move(s)), ep_(split_endpoint(settings_.endpoint)) {}

    RefCurve fetch(const std::string& label) override {
        if (!valid_label(label)) fail(ErrorKind::UnknownLabel, "malformed label '" + label + "'");
        httplib::Client cli(ep_.base);
        auto secs = static_cast<time_t>(settings_.timeout_seconds);
        auto usecs = static_cast<time_t>((settings_.timeout_seconds - static_cast<double>(secs)) * 1e6);
        cli.set_connection_timeout(secs, usecs);
        cli.set_read_timeout(secs, usecs);
        cli.set_follow_location(true);
        std::string path = ep_.path + "?_format=json&Clabel=" + cremona_label(label) +
                           "&_fields=Clabel,ainvs,jinv,isogeny_degrees";
        auto res = cli.Get(path);
        if (!res)
            fail(ErrorKind::NetworkUnavailable,
                 "request to " + ep_.base + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            fail(ErrorKind::NetworkUnavailable, "LMFDB answered HTTP " + std::to_string(res->status) + " for " + label);
        return parse_lmfdb_response(label, res->body);
    }

private:
    LmfdbSettings settings_;
    Endpoint ep_;
};

} // namespace

RefCurve parse_lmfdb_response(const std::string& label, const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        fail(ErrorKind::SchemaMismatch, "response for " + label + " is not JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("data") || !doc["data"].is_array())
        fail(ErrorKind::SchemaMismatch, "response for " + label + " has no data array");
    const json& data = doc["data"];
    if (data.empty()) fail(ErrorKind::UnknownLabel, "label " + label + " not found");
    const json& rec = data[0];
    for (const char* f : {"ainvs", "jinv", "isogeny_degrees"})
        if (!rec.contains(f) || !rec[f].is_array())
            fail(ErrorKind::SchemaMismatch, "record for " + label + " lacks array field '" + f + "'");
    if (rec.contains("Clabel") && rec["Clabel"] != cremona_label(label))
        fail(ErrorKind::SchemaMismatch, "record for " + label + " carries label " + rec["Clabel"].dump());
    if (rec["ainvs"].size() != 5) fail(ErrorKind::SchemaMismatch, "ainvs of " + label + " must have 5 entries");
    std::array<Z, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = json_integer(rec["ainvs"][i], label, "ainvs");
    std::vector<long> degs;
    for (const auto& d : rec["isogeny_degrees"]) {
        Z v = json_integer(d, label, "isogeny_degrees");
        if (v < 1 || !v.fits_slong_p()) fail(ErrorKind::SchemaMismatch, "bad isogeny degree for " + label);
        degs.push_back(v.get_si());
    }
    const json& jv = rec["jinv"];
    if (jv.size() != 2) fail(ErrorKind::SchemaMismatch, "jinv of " + label + " must be [num, den]");
    Z jn = json_integer(jv[0], label, "jinv"), jd = json_integer(jv[1], label, "jinv");
    if (jd == 0) fail(ErrorKind::SchemaMismatch, "jinv of " + label + " has zero denominator");
    RefCurve c;
    try {
        c = make_ref_curve(label, a, degs);
    } catch (const Error& e) {
        fail(ErrorKind::SchemaMismatch, std::string("record for ") + label + ": " + e.what());
    }
    if (c.j != make_q(jn, jd)) fail(ErrorKind::SchemaMismatch, "jinv of " + label + " disagrees with its ainvs");
    return c;
}

std::unique_ptr<CurveSource> make_lmfdb_source(const LmfdbSettings& s) { return std::make_unique<LmfdbSource>(s); }

} // namespace x0n
