#include "schema.hpp"

#include <cmath>
#include <map>

namespace levqsim::cli {

Field real(std::string key, double fallback, Sign sign)
{
    return {std::move(key), Kind::real, fallback, sign, {}, {}};
}

Field integer(std::string key, long fallback, long min_value)
{
    Field f{std::move(key), Kind::integer, fallback, Sign::any, {}, {}};
    f.min_int = min_value;
    return f;
}

Field boolean(std::string key, bool fallback) { return {std::move(key), Kind::boolean, fallback, Sign::any, {}, {}}; }

Field text(std::string key, std::string fallback, std::vector<std::string> choices)
{
    return {std::move(key), Kind::string, std::move(fallback), Sign::any, std::move(choices), {}};
}

Field real_list(std::string key, std::vector<double> fallback, Sign sign)
{
    return {std::move(key), Kind::real_list, json(fallback), sign, {}, {}};
}

Field string_list(std::string key, std::vector<std::string> fallback, std::vector<std::string> choices)
{
    return {std::move(key), Kind::string_list, json(fallback), Sign::any, std::move(choices), {}};
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

Field block(std::string key, std::vector<Field> children)
{
    return {std::move(key), Kind::block, json::object(), Sign::any, {}, std::move(children)};
}

namespace {

void check_sign(double v, Sign sign, const std::string& where)
{
    if (!std::isfinite(v))
        throw ValidationError(where + ": must be a finite number");
    switch (sign) {
    case Sign::positive:
        if (!(v > 0.0))
            throw ValidationError(where + ": must be positive");
        break;
    case Sign::non_negative:
        if (v < 0.0)
            throw ValidationError(where + ": must be non-negative");
        break;
    case Sign::negative_or_zero:
        if (v > 0.0)
            throw ValidationError(where + ": must not be positive");
        break;
    case Sign::any:
        break;
    }
}

void check_choice(const std::string& s, const std::vector<std::string>& choices, const std::string& where)
{
    if (choices.empty())
        return;
    for (const auto& c : choices)
        if (c == s)
            return;
    std::string all;
    for (const auto& c : choices)
        all += (all.empty() ? "" : ", ") + c;
    throw ValidationError(where + ": '" + s + "' is not one of " + all);
}

json resolve_list(const json& v, const Field& f, const std::string& where)
{
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number())
                throw ValidationError(where + ": list entries must be numbers");
            out.push_back(e.get<double>());
        }
    } else if (v.is_object()) {
        for (const auto& [k, _] : v.items())
            if (k != "start" && k != "stop" && k != "count")
                throw ValidationError(where + ": unknown range key '" + k + "'");
        if (!v.contains("start") || !v.contains("stop") || !v.contains("count"))
            throw ValidationError(where + ": range needs start, stop and count");
        if (!v["start"].is_number() || !v["stop"].is_number() || !v["count"].is_number_integer())
            throw ValidationError(where + ": range start/stop must be numbers and count an integer");
        const double a = v["start"].get<double>(), b = v["stop"].get<double>();
        const long n = v["count"].get<long>();
        if (n < 1 || n > 100000)
            throw ValidationError(where + ": range count must lie in [1, 100000]");
        for (long i = 0; i < n; ++i)
            out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
        throw ValidationError(where + ": expected a list of numbers or a {start, stop, count} range");
    }
    for (double x : out)
        check_sign(x, f.sign, where);
    return json(out);
}

json resolve_value(const json& v, const Field& f, const std::string& where)
{
    switch (f.kind) {
    case Kind::real:
        if (!v.is_number())
            throw ValidationError(where + ": expected a number");
        check_sign(v.get<double>(), f.sign, where);
        return v.get<double>();
    case Kind::integer: {
        if (!v.is_number_integer())
            throw ValidationError(where + ": expected an integer");
        const long x = v.get<long>();
        if (x < f.min_int)
            throw ValidationError(where + ": must be >= " + std::to_string(f.min_int));
        return x;
    }
    case Kind::boolean:
        if (!v.is_boolean())
            throw ValidationError(where + ": expected true or false");
        return v;
    case Kind::string:
        if (!v.is_string())
            throw ValidationError(where + ": expected a string");
        check_choice(v.get<std::string>(), f.choices, where);
        return v;
    case Kind::string_list:
        if (!v.is_array())
            throw ValidationError(where + ": expected a list of strings");
        for (const auto& e : v) {
            if (!e.is_string())
                throw ValidationError(where + ": list entries must be strings");
            check_choice(e.get<std::string>(), f.choices, where);
        }
        return v;
    case Kind::real_list:
        return resolve_list(v, f, where);
    case Kind::block:
        if (!v.is_object())
            throw ValidationError(where + ": expected an object");
        return resolve(v, f.children, where);
    }
    return {};
}

} // namespace

json resolve(const json& in, const std::vector<Field>& fields, const std::string& path)
{
    if (!in.is_object())
        throw ValidationError(path + ": expected an object");
    for (const auto& [k, _] : in.items()) {
        bool known = false;
        for (const auto& f : fields)
            known = known || f.key == k;
        if (!known)
            throw ValidationError(path + ": unknown key '" + k + "'");
    }
    json out = json::object();
    for (const auto& f : fields) {
        const std::string where = path + "." + f.key;
        if (in.contains(f.key))
            out[f.key] = resolve_value(in[f.key], f, where);
        else if (f.fallback.is_null())
            throw ValidationError(where + ": required key missing");
        else
            out[f.key] = resolve_value(f.fallback, f, where);
    }
    return out;
}

namespace {

std::vector<Field> solver_fields()
{
    return {
        integer("Nmax", 800, 2),
        real("dtheta_radians", 3.1e-3, Sign::positive),
        real("dtau", 1e-6, Sign::positive),
        real("energy_tol", 1e-10, Sign::positive),
        integer("max_iters", 20'000'000, 1),
        integer("check_interval", 1000, 1),
    };
}

std::vector<Field> geometry_fields()
{
    return {
        real("pin_width_meters", 1e-6, Sign::positive),
        real("pin_gap_meters", 3e-6, Sign::positive),
        real("pin_thickness_meters", 0.2e-6, Sign::positive),
        real("edge_radius_meters", 0.1e-6, Sign::positive),
        real("ground_gap_meters", 1e-6, Sign::positive),
        real("ground_extent_meters", 1e-3, Sign::positive),
        real("half_width_meters", 20e-6, Sign::positive),
        real("half_height_meters", 20e-6, Sign::positive),
        real("h_meters", 50e-9, Sign::positive),
        real("well_depth_meters", 0.0, Sign::non_negative),
    };
}

std::vector<Field> ring_fields()
{
    return {
        real("Rr_meters", 1.5e-6, Sign::positive),
        real("Rs_meters", 0.5e-6, Sign::positive),
        real("a_r_meters", 0.1e-6, Sign::positive),
    };
}

std::vector<Field> concat(std::vector<Field> a, const std::vector<Field>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::map<std::string, std::vector<Field>> build_schemas()
{
    std::map<std::string, std::vector<Field>> s;
    s["trap"] = {
        real("R0_meters", 10e-6, Sign::positive),
        real("W_meters", 20e-6, Sign::positive),
        real("I_amperes", 8.5),
        real("B0_tesla", -26e-3),
        integer("n_loops", 30, 1),
        real("delta_meters", 5e-6, Sign::positive),
        real("dx_meters", 0.1e-6, Sign::positive),
        real("x_extent_meters", 30e-6, Sign::non_negative),
        real("z_min_meters", 0.0),
        real("z_max_meters", 80e-6),
        integer("phi_panels", 720, 4),
        text("material", "SNe"),
        integer("map_stride", 1, 1),
        real("particle_radius_meters", 3e-6, Sign::positive),
        real("temperature_kelvin", 0.1, Sign::non_negative),
        real_list("scan_I_amperes", {}),
        real_list("scan_B0_tesla", {}),
    };
    s["wkb"] = {
        real("eps_relative", 1.244, Sign::positive),
        real("b_meters", 2.3e-10, Sign::non_negative),
        real_list("Er_volts_per_meter", linspace(0.1e6, 0.8e6, 29), Sign::non_negative),
        text("eps1_model", "first_order_stark", {"first_order_stark", "tilted_diagonalization"}),
        real("z_max_meters", 60e-9, Sign::positive),
        real("dz_meters", 0.005e-9, Sign::positive),
        real("profile_Er_volts_per_meter", 0.35e6, Sign::non_negative),
        real("profile_z_max_meters", 30e-9, Sign::positive),
        integer("profile_points", 600, 2),
    };
    s["ring"] = concat(ring_fields(), {
                                          real("H_meters", 1e-6, Sign::positive),
                                          real("Vr_volts", 0.15),
                                          real("dtheta_radians", 3.1e-3, Sign::positive),
                                      });
    s["eigen"] = concat(ring_fields(), {
                                           real("H_meters", 0.85e-6, Sign::positive),
                                           real("Vr_volts", 0.15),
                                           real("B0_tesla", -20e-3),
                                           real_list("n", {0.0}, Sign::non_negative),
                                           real_list("m", {-1.0, 0.0, 1.0, 2.0}),
                                           block("solver", solver_fields()),
                                           boolean("write_wavefunctions", true),
                                       });
    const std::vector<Field> sweep_common = concat(ring_fields(), {
                                                                      real("B0_tesla", -20e-3),
                                                                      real_list("Vr_volts", linspace(0.05, 0.25, 20)),
                                                                      real_list("H_meters", linspace(0.6e-6, 1.1e-6, 20),
                                                                                Sign::positive),
                                                                      block("solver", solver_fields()),
                                                                      boolean("checkpoint", true),
                                                                  });
    s["sweep"] = concat(sweep_common, {
                                          real("f_min_hertz", 1e9),
                                          real("f_max_hertz", 10e9),
                                          real("alpha_min_hertz", 100e6),
                                      });
    s["couple"] = concat(sweep_common, {
                                           real("f_r_hertz", 5e9, Sign::positive),
                                           real_list("Z_diff_ohms", {100.0}, Sign::positive),
                                           boolean("circular_half_factor", false),
                                           block("geometry", geometry_fields()),
                                           real("tol_volts", 1e-11, Sign::positive),
                                           real_list("exchange_g1_hertz", {30e6, 10e6}),
                                           real_list("exchange_g2_hertz", {30e6, 10e6}),
                                           real_list("exchange_delta_hertz", {150e6, 50e6}),
                                       });
    s["laplace"] = {
        block("geometry", geometry_fields()),
        real("tol_volts", 1e-11, Sign::positive),
        integer("max_iters", 200'000, 1),
        real_list("probe_z_meters", {-0.1e-6, -0.2e-6, -0.3e-6, -0.4e-6, -0.5e-6, -0.6e-6, -0.8e-6, -1.0e-6}),
        integer("export_stride", 4, 1),
        boolean("order_test", false),
        real("order_h_meters", 25e-9, Sign::positive),
        real("order_half_size_meters", 5e-6, Sign::positive),
        real("order_probe_z_meters", -0.4e-6),
    };
    s["reproduce"] = {
        text("preset", "full", {"full", "reduced"}),
        string_list("figures", {}, figure_names()),
    };
    return s;
}

} // namespace

const std::vector<Field>& schema_for(const std::string& command)
{
    static const auto schemas = build_schemas();
    const auto it = schemas.find(command);
    if (it == schemas.end())
        throw ValidationError("unknown command '" + command + "'");
    return it->second;
}

} // namespace levqsim::cli
