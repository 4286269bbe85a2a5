#include "fogsim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fogsim {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kBuiltinScenarioNames = {
    "snippet1",    "master_worker", "sequential", "deadline_test",
    "mobility_demo", "cluster_demo", "healthcare"};

const std::vector<std::string> kPlacementPolicyNames = {"cloud_only", "edge_ward", "deadline_aware"};

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

// ---------------------------------------------------------------- JSON

ordered_json param_to_json(const Param& p) {
    if (p.ranged) return ordered_json::array({p.min, p.max});
    return ordered_json(p.min);
}

Param param_from_json(const ordered_json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
            throw SimError(ErrorClass::validation, where + ": a ranged parameter is [min, max]");
        }
        return Param::range(j[0].get<double>(), j[1].get<double>());
    }
    if (!j.is_number()) {
        throw SimError(ErrorClass::validation, where + ": expected a number or [min, max]");
    }
    return Param::fixed(j.get<double>());
}

ordered_json tier_to_json(const TierSpec& t) {
    ordered_json j;
    j["mips"] = param_to_json(t.mips);
    j["ram"] = param_to_json(t.ram);
    j["up_bw"] = param_to_json(t.up_bw);
    j["down_bw"] = param_to_json(t.down_bw);
    j["rate_per_mips"] = param_to_json(t.rate_per_mips);
    j["busy_power"] = param_to_json(t.busy_power);
    j["idle_power"] = param_to_json(t.idle_power);
    j["uplink_latency_ms"] = param_to_json(t.uplink_latency_ms);
    j["x"] = param_to_json(t.x);
    j["y"] = param_to_json(t.y);
    return j;
}

TierSpec tier_from_json(const ordered_json& j, const std::string& where) {
    TierSpec t;
    auto get = [&](const char* key, Param fallback) {
        return j.contains(key) ? param_from_json(j.at(key), where + "." + key) : fallback;
    };
    t.mips = get("mips", Param::fixed(0.0));
    t.ram = get("ram", Param::fixed(0.0));
    t.up_bw = get("up_bw", Param::fixed(0.0));
    t.down_bw = get("down_bw", Param::fixed(0.0));
    t.rate_per_mips = get("rate_per_mips", Param::fixed(0.0));
    t.busy_power = get("busy_power", Param::fixed(0.0));
    t.idle_power = get("idle_power", Param::fixed(0.0));
    t.uplink_latency_ms = get("uplink_latency_ms", Param::fixed(0.0));
    t.x = get("x", Param::fixed(0.0));
    t.y = get("y", Param::fixed(0.0));
    return t;
}

ordered_json device_to_json(const FogDeviceSpec& d) {
    ordered_json j;
    j["name"] = d.name;
    j["mips"] = d.mips;
    j["ram"] = d.ram;
    j["up_bw"] = d.up_bw;
    j["down_bw"] = d.down_bw;
    j["level"] = d.level;
    j["rate_per_mips"] = d.rate_per_mips;
    j["busy_power"] = d.busy_power;
    j["idle_power"] = d.idle_power;
    if (d.parent) j["parent"] = *d.parent;
    j["uplink_latency_ms"] = d.uplink_latency_ms;
    j["x"] = d.x;
    j["y"] = d.y;
    if (d.cost_per_mem != 0.0) j["cost_per_mem"] = d.cost_per_mem;
    if (d.cost_per_storage != 0.0) j["cost_per_storage"] = d.cost_per_storage;
    if (d.cost_per_bw != 0.0) j["cost_per_bw"] = d.cost_per_bw;
    return j;
}

FogDeviceSpec device_from_json(const ordered_json& j) {
    FogDeviceSpec d;
    d.name = j.at("name").get<std::string>();
    d.mips = j.at("mips").get<double>();
    d.ram = j.value("ram", 0.0);
    d.up_bw = j.at("up_bw").get<double>();
    d.down_bw = j.at("down_bw").get<double>();
    d.level = j.at("level").get<int>();
    d.rate_per_mips = j.value("rate_per_mips", 0.0);
    d.busy_power = j.at("busy_power").get<double>();
    d.idle_power = j.at("idle_power").get<double>();
    if (j.contains("parent") && !j["parent"].is_null()) d.parent = j["parent"].get<std::string>();
    d.uplink_latency_ms = j.value("uplink_latency_ms", 0.0);
    d.x = j.value("x", 0.0);
    d.y = j.value("y", 0.0);
    d.cost_per_mem = j.value("cost_per_mem", 0.0);
    d.cost_per_storage = j.value("cost_per_storage", 0.0);
    d.cost_per_bw = j.value("cost_per_bw", 0.0);
    return d;
}

Direction direction_from_string(const std::string& s) {
    if (s == "UP") return Direction::up;
    if (s == "DOWN") return Direction::down;
    throw SimError(ErrorClass::validation, "unknown edge direction '" + s + "'; valid options: UP, DOWN");
}

EdgeKind kind_from_string(const std::string& s) {
    if (s == "SENSOR") return EdgeKind::sensor;
    if (s == "MODULE") return EdgeKind::module;
    if (s == "ACTUATOR") return EdgeKind::actuator;
    throw SimError(ErrorClass::validation,
                   "unknown edge kind '" + s + "'; valid options: SENSOR, MODULE, ACTUATOR");
}

}  // namespace

ordered_json scenario_to_json(const Scenario& s) {
    ordered_json j;
    j["format_version"] = kScenarioFormatVersion;
    j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    j["seed"] = s.seed;
    j["horizon_ms"] = s.horizon_ms;

    ordered_json topo;
    if (s.topology_generator) {
        const TopologyGenSpec& g = *s.topology_generator;
        ordered_json gen;
        gen["num_gateways"] = g.num_gateways;
        gen["end_devices_per_gateway"] = g.end_devices_per_gateway;
        gen["cloud"] = tier_to_json(g.cloud);
        gen["gateway"] = tier_to_json(g.gateway);
        gen["end"] = tier_to_json(g.end);
        gen["cloud_name"] = g.cloud_name;
        gen["gateway_name_prefix"] = g.gateway_name_prefix;
        gen["end_name_prefix"] = g.end_name_prefix;
        gen["assign_parents_by_distance"] = g.assign_parents_by_distance;
        if (g.sensor) {
            ordered_json sj;
            sj["tuple_type"] = g.sensor->tuple_type;
            sj["latency_ms"] = g.sensor->latency_ms;
            sj["emission_interval_ms"] = param_to_json(g.sensor->emission_interval_ms);
            if (g.sensor->max_tuples) sj["max_tuples"] = *g.sensor->max_tuples;
            gen["sensor"] = sj;
        }
        if (g.actuator) {
            ordered_json aj;
            aj["consumed_tuple_type"] = g.actuator->consumed_tuple_type;
            aj["name_prefix"] = g.actuator->name_prefix;
            aj["latency_ms"] = g.actuator->latency_ms;
            gen["actuator"] = aj;
        }
        topo["generator"] = gen;
    }
    topo["devices"] = ordered_json::array();
    for (const auto& d : s.devices) topo["devices"].push_back(device_to_json(d));
    topo["sensors"] = ordered_json::array();
    for (const auto& sn : s.sensors) {
        ordered_json sj;
        sj["name"] = sn.name;
        sj["tuple_type"] = sn.tuple_type;
        sj["gateway"] = sn.gateway;
        sj["latency_ms"] = sn.latency_ms;
        sj["emission_interval_ms"] = sn.emission_interval_ms;
        if (sn.max_tuples) sj["max_tuples"] = *sn.max_tuples;
        topo["sensors"].push_back(sj);
    }
    topo["actuators"] = ordered_json::array();
    for (const auto& a : s.actuators) {
        ordered_json aj;
        aj["name"] = a.name;
        aj["consumed_tuple_type"] = a.consumed_tuple_type;
        aj["gateway"] = a.gateway;
        aj["latency_ms"] = a.latency_ms;
        topo["actuators"].push_back(aj);
    }
    j["topology"] = topo;

    ordered_json app;
    if (!s.app.builtin.empty()) app["builtin"] = s.app.builtin;
    app["app_id"] = s.app.app_id;
    app["modules"] = ordered_json::array();
    for (const auto& m : s.app.modules) {
        app["modules"].push_back(
            ordered_json{{"name", m.name}, {"ram", m.ram}, {"mips", m.mips}, {"size", m.size}, {"bw", m.bw}});
    }
    app["edges"] = ordered_json::array();
    for (const auto& e : s.app.edges) {
        ordered_json ej;
        ej["source"] = e.source;
        ej["destination"] = e.destination;
        ej["cpu_length_mi"] = e.cpu_length_mi;
        ej["nw_length_kb"] = e.nw_length_kb;
        ej["tuple_type"] = e.tuple_type;
        ej["direction"] = e.direction;
        ej["kind"] = e.kind;
        if (e.period_ms) ej["period_ms"] = *e.period_ms;
        app["edges"].push_back(ej);
    }
    app["mappings"] = ordered_json::array();
    for (const auto& m : s.app.mappings) {
        app["mappings"].push_back(ordered_json{{"module", m.module},
                                               {"input_type", m.input_type},
                                               {"output_type", m.output_type},
                                               {"selectivity", m.selectivity}});
    }
    app["loops"] = s.app.loops;
    app["deadline_info"] = s.app.deadline_info;
    app["additional_mips"] = s.app.additional_mips;
    j["application"] = app;

    ordered_json pl;
    pl["policy"] = s.placement.policy;
    if (!s.placement.module_to_place.empty()) pl["module_to_place"] = s.placement.module_to_place;
    pl["pins"] = ordered_json::array();
    for (const auto& p : s.placement.pins) {
        pl["pins"].push_back(ordered_json{{"module", p.module}, {"device", p.device}});
    }
    if (s.placement.deadline_range) {
        pl["deadline_range"] = ordered_json::array(
            {s.placement.deadline_range->first, s.placement.deadline_range->second});
    }
    if (s.placement.extra_mips_range) {
        pl["extra_mips_range"] = ordered_json::array(
            {s.placement.extra_mips_range->first, s.placement.extra_mips_range->second});
    }
    j["placement"] = pl;

    j["mobility"] = ordered_json::array();
    for (const auto& m : s.mobility) {
        j["mobility"].push_back(
            ordered_json{{"device", m.device}, {"at_ms", m.at_ms}, {"new_parent", m.new_parent}});
    }
    if (s.cluster) {
        j["cluster"] = ordered_json{{"level", s.cluster->level},
                                    {"distance", s.cluster->distance},
                                    {"max_number", s.cluster->max_number}};
    }
    return j;
}

Scenario scenario_from_json(const ordered_json& j) {
    Scenario s;
    s.name = j.value("name", std::string("scenario"));
    s.description = j.value("description", std::string());
    s.seed = j.value("seed", std::uint64_t{0});
    s.horizon_ms = j.value("horizon_ms", 0.0);

    if (j.contains("topology")) {
        const auto& topo = j.at("topology");
        if (topo.contains("generator")) {
            const auto& gen = topo.at("generator");
            TopologyGenSpec g;
            g.num_gateways = gen.value("num_gateways", 0);
            g.end_devices_per_gateway = gen.value("end_devices_per_gateway", 0);
            if (gen.contains("cloud")) g.cloud = tier_from_json(gen["cloud"], "topology.generator.cloud");
            if (gen.contains("gateway")) g.gateway = tier_from_json(gen["gateway"], "topology.generator.gateway");
            if (gen.contains("end")) g.end = tier_from_json(gen["end"], "topology.generator.end");
            g.cloud_name = gen.value("cloud_name", std::string("cloud"));
            g.gateway_name_prefix = gen.value("gateway_name_prefix", std::string("g-"));
            g.end_name_prefix = gen.value("end_name_prefix", std::string("e-"));
            g.assign_parents_by_distance = gen.value("assign_parents_by_distance", false);
            if (gen.contains("sensor")) {
                SensorTemplate st;
                st.tuple_type = gen["sensor"].at("tuple_type").get<std::string>();
                st.latency_ms = gen["sensor"].value("latency_ms", 0.0);
                st.emission_interval_ms = param_from_json(gen["sensor"].at("emission_interval_ms"),
                                                          "topology.generator.sensor.emission_interval_ms");
                if (gen["sensor"].contains("max_tuples")) {
                    st.max_tuples = gen["sensor"]["max_tuples"].get<std::uint64_t>();
                }
                g.sensor = st;
            }
            if (gen.contains("actuator")) {
                ActuatorTemplate at;
                at.consumed_tuple_type = gen["actuator"].at("consumed_tuple_type").get<std::string>();
                at.name_prefix = gen["actuator"].value("name_prefix", std::string("a-"));
                at.latency_ms = gen["actuator"].value("latency_ms", 0.0);
                g.actuator = at;
            }
            s.topology_generator = g;
        }
        for (const auto& dj : topo.value("devices", ordered_json::array())) {
            s.devices.push_back(device_from_json(dj));
        }
        for (const auto& sj : topo.value("sensors", ordered_json::array())) {
            SensorSpec sn;
            sn.name = sj.at("name").get<std::string>();
            sn.tuple_type = sj.at("tuple_type").get<std::string>();
            sn.gateway = sj.at("gateway").get<std::string>();
            sn.latency_ms = sj.value("latency_ms", 0.0);
            sn.emission_interval_ms = sj.at("emission_interval_ms").get<double>();
            if (sj.contains("max_tuples") && !sj["max_tuples"].is_null()) {
                sn.max_tuples = sj["max_tuples"].get<std::uint64_t>();
            }
            s.sensors.push_back(sn);
        }
        for (const auto& aj : topo.value("actuators", ordered_json::array())) {
            ActuatorSpec a;
            a.name = aj.at("name").get<std::string>();
            a.consumed_tuple_type = aj.at("consumed_tuple_type").get<std::string>();
            a.gateway = aj.at("gateway").get<std::string>();
            a.latency_ms = aj.value("latency_ms", 0.0);
            s.actuators.push_back(a);
        }
    }

    if (j.contains("application")) {
        const auto& app = j.at("application");
        s.app.builtin = app.value("builtin", std::string());
        s.app.app_id = app.value("app_id", std::string());
        for (const auto& mj : app.value("modules", ordered_json::array())) {
            s.app.modules.push_back(ModuleSpec{mj.at("name").get<std::string>(), mj.value("ram", 0.0),
                                               mj.at("mips").get<double>(), mj.value("size", 0.0),
                                               mj.value("bw", 0.0)});
        }
        for (const auto& ej : app.value("edges", ordered_json::array())) {
            EdgeSpec e;
            e.source = ej.at("source").get<std::string>();
            e.destination = ej.at("destination").get<std::string>();
            e.cpu_length_mi = ej.at("cpu_length_mi").get<double>();
            e.nw_length_kb = ej.at("nw_length_kb").get<double>();
            e.tuple_type = ej.at("tuple_type").get<std::string>();
            e.direction = ej.value("direction", std::string("UP"));
            e.kind = ej.value("kind", std::string("MODULE"));
            if (ej.contains("period_ms") && !ej["period_ms"].is_null()) {
                e.period_ms = ej["period_ms"].get<double>();
            }
            s.app.edges.push_back(e);
        }
        for (const auto& mj : app.value("mappings", ordered_json::array())) {
            s.app.mappings.push_back(MappingSpec{mj.at("module").get<std::string>(),
                                                 mj.at("input_type").get<std::string>(),
                                                 mj.at("output_type").get<std::string>(),
                                                 mj.at("selectivity").get<double>()});
        }
        if (app.contains("loops")) {
            s.app.loops = app["loops"].get<std::vector<std::vector<std::string>>>();
        }
        if (app.contains("deadline_info")) {
            s.app.deadline_info =
                app["deadline_info"].get<std::map<std::string, std::map<std::string, double>>>();
        }
        if (app.contains("additional_mips")) {
            s.app.additional_mips =
                app["additional_mips"].get<std::map<std::string, std::map<std::string, double>>>();
        }
    }

    if (j.contains("placement")) {
        const auto& pl = j.at("placement");
        s.placement.policy = pl.value("policy", std::string("cloud_only"));
        s.placement.module_to_place = pl.value("module_to_place", std::string());
        for (const auto& pj : pl.value("pins", ordered_json::array())) {
            s.placement.pins.push_back(
                PinSpec{pj.at("module").get<std::string>(), pj.at("device").get<std::string>()});
        }
        if (pl.contains("deadline_range")) {
            s.placement.deadline_range =
                std::make_pair(pl["deadline_range"][0].get<double>(), pl["deadline_range"][1].get<double>());
        }
        if (pl.contains("extra_mips_range")) {
            s.placement.extra_mips_range =
                std::make_pair(pl["extra_mips_range"][0].get<int>(), pl["extra_mips_range"][1].get<int>());
        }
    }

    for (const auto& mj : j.value("mobility", ordered_json::array())) {
        s.mobility.push_back(MobilitySpec{mj.at("device").get<std::string>(), mj.at("at_ms").get<double>(),
                                          mj.at("new_parent").get<std::string>()});
    }
    if (j.contains("cluster") && !j["cluster"].is_null()) {
        ClusterSpec c;
        c.level = j["cluster"].value("level", 0);
        c.distance = j["cluster"].value("distance", 2.0);
        c.max_number = j["cluster"].value("max_number", 9999999.0);
        s.cluster = c;
    }
    return s;
}

namespace {

void expand_generator(Scenario& s) {
    if (!s.topology_generator) return;
    const TopologyGenSpec g = *s.topology_generator;
    RngStream topo_rng = RngStream::named(s.seed, "topology");
    RngStream sensor_rng = RngStream::named(s.seed, "sensors");

    auto make_device = [&](const std::string& name, const TierSpec& tier, int level,
                           std::optional<std::string> parent) {
        FogDeviceSpec d;
        d.name = name;
        d.mips = tier.mips.resolve(topo_rng);
        d.ram = tier.ram.resolve(topo_rng);
        d.up_bw = tier.up_bw.resolve(topo_rng);
        d.down_bw = tier.down_bw.resolve(topo_rng);
        d.level = level;
        d.rate_per_mips = tier.rate_per_mips.resolve(topo_rng);
        d.busy_power = tier.busy_power.resolve(topo_rng);
        d.idle_power = tier.idle_power.resolve(topo_rng);
        d.parent = std::move(parent);
        d.uplink_latency_ms = tier.uplink_latency_ms.resolve(topo_rng);
        d.x = tier.x.resolve(topo_rng);
        d.y = tier.y.resolve(topo_rng);
        return d;
    };

    auto attach_iot = [&](const std::string& end_name, const std::string& suffix) {
        if (g.sensor) {
            SensorSpec sn;
            sn.name = g.sensor->tuple_type;  // sensor name and tuple type are the same
            sn.tuple_type = g.sensor->tuple_type;
            sn.gateway = end_name;
            sn.latency_ms = g.sensor->latency_ms;
            sn.emission_interval_ms = g.sensor->emission_interval_ms.resolve(sensor_rng);
            sn.max_tuples = g.sensor->max_tuples;
            s.sensors.push_back(sn);
        }
        if (g.actuator) {
            ActuatorSpec a;
            a.name = g.actuator->name_prefix + suffix;
            a.consumed_tuple_type = g.actuator->consumed_tuple_type;
            a.gateway = end_name;
            a.latency_ms = g.actuator->latency_ms;
            s.actuators.push_back(a);
        }
    };

    s.devices.push_back(make_device(g.cloud_name, g.cloud, 0, std::nullopt));
    int flat_end = 0;
    for (int i = 0; i < g.num_gateways; ++i) {
        const std::string gw_name = g.gateway_name_prefix + std::to_string(i);
        s.devices.push_back(make_device(gw_name, g.gateway, 1, g.cloud_name));
        for (int k = 0; k < g.end_devices_per_gateway; ++k) {
            std::string suffix;
            std::optional<std::string> parent;
            if (g.assign_parents_by_distance) {
                suffix = std::to_string(flat_end++);
            } else {
                suffix = std::to_string(i) + "-" + std::to_string(k);
                parent = gw_name;
            }
            const std::string end_name = g.end_name_prefix + suffix;
            s.devices.push_back(make_device(end_name, g.end, 2, std::move(parent)));
            attach_iot(end_name, suffix);
        }
    }
    s.topology_generator.reset();
}

void expand_builtin_app(Scenario& s) {
    if (s.app.builtin.empty()) return;
    Application app = builtin_application(s.app.builtin);
    s.app.builtin.clear();
    s.app.app_id = app.app_id();
    for (const auto& m : app.modules()) {
        s.app.modules.push_back(ModuleSpec{m.name, m.ram, m.mips, m.size, m.bw});
    }
    for (const auto& e : app.edges()) {
        EdgeSpec es;
        es.source = e.source;
        es.destination = e.destination;
        es.cpu_length_mi = e.cpu_length_mi;
        es.nw_length_kb = e.nw_length_kb;
        es.tuple_type = e.tuple_type;
        es.direction = std::string(to_string(e.direction));
        es.kind = std::string(to_string(e.kind));
        es.period_ms = e.period_ms;
        s.app.edges.push_back(es);
    }
    for (const auto& m : app.mappings()) {
        s.app.mappings.push_back(MappingSpec{m.module, m.input_type, m.output_type, m.selectivity});
    }
    for (const auto& l : app.loops()) s.app.loops.push_back(l.sequence);
}

// Devices the deadline-aware policy can serve: level-2 devices that are
// nobody's parent. Parentless ones get adopted by a level-1 gateway later.
std::vector<std::string> deadline_target_devices(const Scenario& s) {
    std::set<std::string> parents;
    for (const auto& d : s.devices) {
        if (d.parent) parents.insert(*d.parent);
    }
    std::vector<std::string> leaves;
    for (const auto& d : s.devices) {
        if (d.level == 2 && !parents.count(d.name)) leaves.push_back(d.name);
    }
    return leaves;
}

void resolve_placement_ranges(Scenario& s) {
    if (s.placement.policy != "deadline_aware") return;
    if (!s.placement.deadline_range && !s.placement.extra_mips_range) return;
    const std::string& module = s.placement.module_to_place;
    if (module.empty()) return;  // compile() reports the missing module
    RngStream deadline_rng = RngStream::named(s.seed, "deadline");
    RngStream extra_rng = RngStream::named(s.seed, "extra-mips");
    for (const auto& leaf : deadline_target_devices(s)) {
        if (s.placement.deadline_range && !s.app.deadline_info[leaf].count(module)) {
            s.app.deadline_info[leaf][module] =
                deadline_rng.uniform(s.placement.deadline_range->first, s.placement.deadline_range->second);
        }
        if (s.placement.extra_mips_range && !s.app.additional_mips[leaf].count(module)) {
            s.app.additional_mips[leaf][module] = extra_rng.uniform_int(
                s.placement.extra_mips_range->first, s.placement.extra_mips_range->second);
        }
    }
}

}  // namespace

void materialize(Scenario& s) {
    expand_generator(s);
    expand_builtin_app(s);
    resolve_placement_ranges(s);
}

CompiledScenario compile(const Scenario& s) {
    std::vector<std::string> violations;
    CompiledScenario out;
    out.horizon_ms = s.horizon_ms;
    out.seed = s.seed;

    if (!(s.horizon_ms >= 0.0)) violations.push_back("horizon_ms must be non-negative");
    if (s.topology_generator) violations.push_back("scenario not materialized: topology generator pending");
    if (!s.app.builtin.empty()) violations.push_back("scenario not materialized: builtin application pending");

    for (const auto& d : s.devices) {
        try {
            out.topology.add_device(d);
        } catch (const SimError& e) {
            violations.push_back(e.what());
        }
    }
    for (const auto& sn : s.sensors) {
        DeviceId gw = out.topology.find_by_name(sn.gateway);
        if (gw == kNoDevice) {
            violations.push_back("sensor '" + sn.name + "': unknown gateway device '" + sn.gateway + "'");
            continue;
        }
        try {
            out.topology.attach_sensor(
                Sensor{sn.name, sn.tuple_type, gw, sn.latency_ms, sn.emission_interval_ms, sn.max_tuples});
        } catch (const SimError& e) {
            violations.push_back(e.what());
        }
    }
    for (const auto& a : s.actuators) {
        DeviceId gw = out.topology.find_by_name(a.gateway);
        if (gw == kNoDevice) {
            violations.push_back("actuator '" + a.name + "': unknown gateway device '" + a.gateway + "'");
            continue;
        }
        try {
            out.topology.attach_actuator(Actuator{a.name, a.consumed_tuple_type, gw, a.latency_ms});
        } catch (const SimError& e) {
            violations.push_back(e.what());
        }
    }

    ClusterConfig cluster_cfg;
    if (s.cluster) {
        cluster_cfg.cluster_distance = s.cluster->distance;
        cluster_cfg.max_number = s.cluster->max_number;
    }
    bool has_orphans = std::any_of(out.topology.devices().begin(), out.topology.devices().end(),
                                   [](const FogDevice& d) { return d.level > 0 && d.parent == kNoDevice; });
    if (has_orphans) {
        try {
            out.topology.select_gateways(cluster_cfg);
        } catch (const SimError& e) {
            violations.push_back(e.what());
        }
    }
    if (s.cluster) {
        out.clusters = out.topology.form_clusters(s.cluster->level, cluster_cfg);
    }

    Application app(s.app.app_id);
    for (const auto& m : s.app.modules) {
        try {
            app.add_module(m.name, m.ram, m.mips, m.size, m.bw);
        } catch (const SimError& e) {
            violations.push_back(e.what());
        }
    }
    for (const auto& e : s.app.edges) {
        try {
            app.add_edge(e.source, e.destination, e.cpu_length_mi, e.nw_length_kb, e.tuple_type,
                         direction_from_string(e.direction), kind_from_string(e.kind), e.period_ms);
        } catch (const SimError& err) {
            violations.push_back(err.what());
        }
    }
    for (const auto& m : s.app.mappings) {
        try {
            app.add_tuple_mapping(m.module, m.input_type, m.output_type, m.selectivity);
        } catch (const SimError& err) {
            violations.push_back(err.what());
        }
    }
    for (const auto& l : s.app.loops) app.add_loop(l);

    for (const auto& [device_name, per_module] : s.app.deadline_info) {
        DeviceId id = out.topology.find_by_name(device_name);
        if (id == kNoDevice) {
            violations.push_back("deadline_info: unknown device '" + device_name + "'");
            continue;
        }
        for (const auto& [module, value] : per_module) app.set_deadline(id, module, value);
    }
    for (const auto& [device_name, per_module] : s.app.additional_mips) {
        DeviceId id = out.topology.find_by_name(device_name);
        if (id == kNoDevice) {
            violations.push_back("additional_mips: unknown device '" + device_name + "'");
            continue;
        }
        for (const auto& [module, value] : per_module) app.set_additional_mips(id, module, value);
    }

    for (const auto& v : out.topology.validate()) violations.push_back(v);
    for (const auto& v : app.validate()) violations.push_back(v);

    // Cross checks between topology and application.
    for (const auto& sn : out.topology.sensors()) {
        bool matched = std::any_of(app.edges().begin(), app.edges().end(), [&](const AppEdge& e) {
            return e.kind == EdgeKind::sensor && trim_type(e.source) == trim_type(sn.tuple_type);
        });
        if (!matched) {
            violations.push_back("sensor '" + sn.name + "': no SENSOR edge matches tuple type '" +
                                 sn.tuple_type + "'");
        }
    }
    for (const auto& e : app.edges()) {
        if (e.kind != EdgeKind::actuator) continue;
        bool matched = std::any_of(
            out.topology.actuators().begin(), out.topology.actuators().end(), [&](const Actuator& a) {
                return trim_type(a.consumed_tuple_type) == trim_type(e.destination) ||
                       trim_type(a.consumed_tuple_type) == trim_type(e.tuple_type);
            });
        if (!matched) {
            violations.push_back("actuator edge '" + e.tuple_type + "': no actuator consumes it");
        }
    }

    for (const auto& m : s.mobility) {
        DeviceId device = out.topology.find_by_name(m.device);
        DeviceId new_parent = out.topology.find_by_name(m.new_parent);
        if (device == kNoDevice) {
            violations.push_back("mobility entry: unknown device '" + m.device + "'");
            continue;
        }
        if (new_parent == kNoDevice) {
            violations.push_back("mobility entry: unknown destination '" + m.new_parent + "'");
            continue;
        }
        if (device == new_parent) {
            violations.push_back("mobility entry: device '" + m.device + "' cannot become its own parent");
            continue;
        }
        if (m.at_ms < 0.0) {
            violations.push_back("mobility entry for '" + m.device + "': negative time");
            continue;
        }
        out.mobility.push_back(MobilityEntry{device, m.at_ms, new_parent});
    }

    bool policy_known = std::find(kPlacementPolicyNames.begin(), kPlacementPolicyNames.end(),
                                  s.placement.policy) != kPlacementPolicyNames.end();
    if (!policy_known) {
        violations.push_back("unknown placement policy '" + s.placement.policy +
                             "'; valid options: " + join(kPlacementPolicyNames, ", "));
    }
    if (s.placement.policy == "deadline_aware" && s.placement.module_to_place.empty()) {
        violations.push_back("deadline_aware placement requires module_to_place");
    }

    if (!violations.empty()) {
        throw SimError(ErrorClass::validation,
                       "scenario validation failed (" + std::to_string(violations.size()) +
                           " violation(s)):\n  - " + join(violations, "\n  - "));
    }

    PinList pins;
    for (const auto& p : s.placement.pins) {
        pins = pin_module(std::move(pins), p.module, p.device, app, out.topology);
    }
    out.app = std::move(app);
    if (s.placement.policy == "cloud_only") {
        out.placement = cloud_only_place(out.app, out.topology, pins);
    } else if (s.placement.policy == "edge_ward") {
        out.placement = edge_ward_place(out.app, out.topology, pins);
    } else {
        out.placement = deadline_aware_place(out.app, out.topology, pins, s.placement.module_to_place);
    }
    return out;
}

namespace {

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw SimError(ErrorClass::validation, origin + ": syntax error: empty document");
    }
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw SimError(ErrorClass::validation, origin + ": syntax error at line " + std::to_string(line) +
                                                   ", column " + std::to_string(column) + ": " + e.what());
    }
    Scenario s;
    try {
        s = scenario_from_json(j);
    } catch (const SimError&) {
        throw;
    } catch (const std::exception& e) {
        throw SimError(ErrorClass::validation, origin + ": invalid scenario document: " + e.what());
    }
    materialize(s);
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SimError(ErrorClass::usage, "cannot read scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path);
}

}  // namespace fogsim
