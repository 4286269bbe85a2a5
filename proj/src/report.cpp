#include "fogsim/report.hpp"

#include <sstream>

namespace fogsim {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string loop_label(const std::vector<std::string>& sequence) {
    std::string out;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i) out += "->";
        out += sequence[i];
    }
    return out;
}

}  // namespace

std::string emit_machine(const ReportDocument& doc) {
    ordered_json j;
    j["format_version"] = doc.format_version;
    j["tool_version"] = doc.tool_version;
    j["scenario"] = scenario_to_json(doc.scenario);

    j["topology"] = ordered_json::array();
    for (const auto& d : doc.topology) {
        ordered_json dj;
        dj["id"] = d.id;
        dj["name"] = d.name;
        dj["level"] = d.level;
        dj["parent"] = d.parent;
        dj["x"] = d.x;
        dj["y"] = d.y;
        dj["mips"] = d.mips;
        dj["rate_per_mips"] = d.rate_per_mips;
        dj["busy_power"] = d.busy_power;
        dj["idle_power"] = d.idle_power;
        dj["up_bw"] = d.up_bw;
        dj["down_bw"] = d.down_bw;
        dj["uplink_latency_ms"] = d.uplink_latency_ms;
        j["topology"].push_back(dj);
    }

    j["placement"] = ordered_json::array();
    for (const auto& p : doc.placement) {
        ordered_json pj;
        pj["module"] = p.module;
        pj["host"] = p.host;
        pj["host_name"] = p.host_name;
        if (p.client_scope) pj["client_scope"] = *p.client_scope;
        pj["allocated_mips"] = p.allocated_mips;
        j["placement"].push_back(pj);
    }

    j["clusters"] = ordered_json::object();
    for (const auto& [id, members] : doc.clusters) {
        j["clusters"][std::to_string(id)] = members;
    }

    ordered_json m;
    m["seed"] = doc.metrics.seed;
    m["horizon_ms"] = doc.metrics.horizon_ms;
    m["loops"] = ordered_json::array();
    for (const auto& loop : doc.metrics.loops) {
        ordered_json lj;
        lj["sequence"] = loop.sequence;
        lj["count"] = loop.count;
        lj["mean_ms"] = loop.mean_ms;
        lj["samples_ms"] = loop.samples_ms;
        m["loops"].push_back(lj);
    }
    m["energy_j"] = ordered_json::array();
    for (const auto& e : doc.metrics.energy) {
        m["energy_j"].push_back(ordered_json{{"device", e.device}, {"name", e.name}, {"joules", e.joules}});
    }
    m["network"] = ordered_json{{"total_kb", doc.metrics.network_total_kb},
                                {"kb_ms", doc.metrics.network_kb_ms}};
    m["total_cost"] = doc.metrics.total_cost;
    m["processing_delay_ms"] = ordered_json::array();
    for (const auto& d : doc.metrics.processing_delay) {
        m["processing_delay_ms"].push_back(
            ordered_json{{"type", d.tuple_type}, {"count", d.count}, {"mean_ms", d.mean_ms}});
    }
    j["metrics"] = m;
    return j.dump(2) + "\n";
}

ReportDocument parse_machine(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SimError(ErrorClass::validation, std::string("report parse failed: ") + e.what());
    }
    ReportDocument doc;
    doc.format_version = j.at("format_version").get<int>();
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.scenario = scenario_from_json(j.at("scenario"));
    for (const auto& dj : j.value("topology", ordered_json::array())) {
        DeviceRow d;
        d.id = dj.at("id").get<DeviceId>();
        d.name = dj.at("name").get<std::string>();
        d.level = dj.at("level").get<int>();
        d.parent = dj.at("parent").get<DeviceId>();
        d.x = dj.at("x").get<double>();
        d.y = dj.at("y").get<double>();
        d.mips = dj.at("mips").get<double>();
        d.rate_per_mips = dj.at("rate_per_mips").get<double>();
        d.busy_power = dj.at("busy_power").get<double>();
        d.idle_power = dj.at("idle_power").get<double>();
        d.up_bw = dj.at("up_bw").get<double>();
        d.down_bw = dj.at("down_bw").get<double>();
        d.uplink_latency_ms = dj.at("uplink_latency_ms").get<double>();
        doc.topology.push_back(d);
    }
    for (const auto& pj : j.value("placement", ordered_json::array())) {
        PlacementRow p;
        p.module = pj.at("module").get<std::string>();
        p.host = pj.at("host").get<DeviceId>();
        p.host_name = pj.at("host_name").get<std::string>();
        if (pj.contains("client_scope")) p.client_scope = pj["client_scope"].get<DeviceId>();
        p.allocated_mips = pj.at("allocated_mips").get<double>();
        doc.placement.push_back(p);
    }
    if (j.contains("clusters")) {
        for (const auto& [key, members] : j.at("clusters").items()) {
            doc.clusters[std::stoi(key)] = members.get<std::vector<DeviceId>>();
        }
    }
    const auto& m = j.at("metrics");
    doc.metrics.seed = m.at("seed").get<std::uint64_t>();
    doc.metrics.horizon_ms = m.at("horizon_ms").get<double>();
    for (const auto& lj : m.value("loops", ordered_json::array())) {
        LoopStats loop;
        loop.sequence = lj.at("sequence").get<std::vector<std::string>>();
        loop.count = lj.at("count").get<std::uint64_t>();
        loop.mean_ms = lj.at("mean_ms").get<double>();
        loop.samples_ms = lj.at("samples_ms").get<std::vector<double>>();
        doc.metrics.loops.push_back(loop);
    }
    for (const auto& ej : m.value("energy_j", ordered_json::array())) {
        doc.metrics.energy.push_back(DeviceEnergy{ej.at("device").get<DeviceId>(),
                                                  ej.at("name").get<std::string>(),
                                                  ej.at("joules").get<double>()});
    }
    doc.metrics.network_total_kb = m.at("network").at("total_kb").get<double>();
    doc.metrics.network_kb_ms = m.at("network").at("kb_ms").get<double>();
    doc.metrics.total_cost = m.at("total_cost").get<double>();
    for (const auto& dj : m.value("processing_delay_ms", ordered_json::array())) {
        doc.metrics.processing_delay.push_back(TypeDelay{dj.at("type").get<std::string>(),
                                                         dj.at("count").get<std::uint64_t>(),
                                                         dj.at("mean_ms").get<double>()});
    }
    return doc;
}

std::string emit_human(const ReportDocument& doc) {
    std::ostringstream out;
    out << "fogsim " << doc.tool_version << " run report\n";
    out << "scenario: " << doc.scenario.name << "  seed: " << doc.metrics.seed
        << "  horizon: " << doc.metrics.horizon_ms << " ms\n\n";

    out << "loops (" << doc.metrics.loops.size() << "):\n";
    for (const auto& loop : doc.metrics.loops) {
        out << "  " << loop_label(loop.sequence) << "\n";
        out << "    completions: " << loop.count << "  mean latency: " << loop.mean_ms << " ms\n";
    }

    out << "\nenergy per device (J):\n";
    for (const auto& e : doc.metrics.energy) {
        out << "  " << e.name << ": " << e.joules << "\n";
    }

    out << "\nnetwork usage: " << doc.metrics.network_total_kb << " kB total, "
        << doc.metrics.network_kb_ms << " kB*ms\n";
    out << "execution cost: " << doc.metrics.total_cost << "\n";

    if (!doc.metrics.processing_delay.empty()) {
        out << "\nmean processing delay per tuple type (ms):\n";
        for (const auto& d : doc.metrics.processing_delay) {
            out << "  " << d.tuple_type << ": " << d.mean_ms << " (" << d.count << " tuples)\n";
        }
    }

    if (!doc.clusters.empty()) {
        out << "\nclusters:\n";
        for (const auto& [id, members] : doc.clusters) {
            out << "  cluster " << id << ":";
            for (DeviceId m : members) out << " " << doc.topology[m].name;
            out << "\n";
        }
    }

    out << "\nplacement (" << doc.placement.size() << " instances):\n";
    for (const auto& p : doc.placement) {
        out << "  " << p.module << " -> " << p.host_name;
        if (p.client_scope) out << " [client " << doc.topology[*p.client_scope].name << "]";
        out << " (" << p.allocated_mips << " MI/s)\n";
    }
    return out.str();
}

std::string emit_csv(const ReportDocument& doc) {
    std::ostringstream out;
    out << "metric,entity,value\n";
    for (const auto& loop : doc.metrics.loops) {
        out << "loop_mean_latency_ms," << loop_label(loop.sequence) << "," << loop.mean_ms << "\n";
    }
    for (const auto& e : doc.metrics.energy) {
        out << "energy_j," << e.name << "," << e.joules << "\n";
    }
    out << "network_total_kb,total," << doc.metrics.network_total_kb << "\n";
    out << "network_kb_ms,total," << doc.metrics.network_kb_ms << "\n";
    out << "total_cost,total," << doc.metrics.total_cost << "\n";
    return out.str();
}

std::string emit_report(const ReportDocument& doc, const std::string& format) {
    if (format == "machine") return emit_machine(doc);
    if (format == "human") return emit_human(doc);
    if (format == "csv") return emit_csv(doc);
    throw SimError(ErrorClass::usage,
                   "unknown report format '" + format + "'; valid options: human, machine, csv");
}

ReportDocument execute_scenario(Scenario scenario, const RunOptions& options, EventLogSink* log) {
    if (options.seed) scenario.seed = *options.seed;
    if (options.horizon_ms) scenario.horizon_ms = *options.horizon_ms;
    if (options.policy) scenario.placement.policy = *options.policy;
    materialize(scenario);

    CompiledScenario compiled = compile(scenario);
    MetricsReport metrics = run_compiled(compiled, log);

    ReportDocument doc;
    doc.scenario = std::move(scenario);
    for (const auto& d : compiled.topology.devices()) {
        DeviceRow row;
        row.id = d.id;
        row.name = d.name;
        row.level = d.level;
        row.parent = d.parent;
        row.x = d.x;
        row.y = d.y;
        row.mips = d.mips;
        row.rate_per_mips = d.rate_per_mips;
        row.busy_power = d.busy_power;
        row.idle_power = d.idle_power;
        row.up_bw = d.up_bw;
        row.down_bw = d.down_bw;
        row.uplink_latency_ms = d.uplink_latency_ms;
        doc.topology.push_back(row);
    }
    for (const auto& i : compiled.placement.instances) {
        PlacementRow row;
        row.module = i.module;
        row.host = i.host;
        row.host_name = compiled.topology.device(i.host).name;
        row.client_scope = i.client_scope;
        row.allocated_mips = i.allocated_mips;
        doc.placement.push_back(row);
    }
    doc.clusters = compiled.clusters;
    doc.metrics = std::move(metrics);
    return doc;
}

ReportDocument execute_builtin(const std::string& name, const RunOptions& options, EventLogSink* log) {
    Scenario scenario = generate_builtin(name, options.seed.value_or(0));
    return execute_scenario(std::move(scenario), options, log);
}

ReportDocument execute_file(const std::string& path, const RunOptions& options, EventLogSink* log) {
    Scenario scenario = parse_scenario(path);
    return execute_scenario(std::move(scenario), options, log);
}

}  // namespace fogsim
