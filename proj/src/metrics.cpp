#include "stage/metrics.hpp"

#include "stage/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

using nlohmann::json;

namespace stage {

Volume metric_oob(const std::vector<Aabb>& layout, const StageConfig& cfg) {
    double total = 0;
    for (const auto& box : layout) total += out_of_bound_volume(box, cfg).cm3;
    return {total};
}

Volume metric_ois(const std::vector<Aabb>& layout) {
    double total = 0;
    for (size_t i = 0; i < layout.size(); ++i)
        for (size_t j = i + 1; j < layout.size(); ++j)
            total += intersection_volume(layout[i], layout[j]).cm3;
    return {total};
}

Volume metric_iwg(const std::vector<Aabb>& generated, const std::vector<Aabb>& ground_truth,
                  IwgMode mode) {
    if (mode == IwgMode::union_mode)
        return union_intersection_volume(generated, ground_truth);
    double total = 0;
    for (const auto& g : generated)
        for (const auto& t : ground_truth) total += intersection_volume(g, t).cm3;
    return {total};
}

ClassDiversity metric_class_diversity(
    const std::vector<std::vector<std::string>>& categories_per_stage) {
    if (categories_per_stage.empty())
        throw EmptyError("class diversity requires at least one stage");
    ClassDiversity result;
    result.min = std::numeric_limits<int>::max();
    result.max = 0;
    double sum = 0;
    for (const auto& categories : categories_per_stage) {
        const int unique = int(std::set<std::string>(categories.begin(), categories.end()).size());
        sum += unique;
        result.min = std::min(result.min, unique);
        result.max = std::max(result.max, unique);
    }
    result.mean = sum / double(categories_per_stage.size());
    return result;
}

MetricsReport build_report(const std::vector<StageInput>& stages, const StageConfig& cfg,
                           IwgMode iwg_mode) {
    if (stages.empty()) throw EmptyError("report requires at least one stage");

    MetricsReport report;
    report.iwg_mode = iwg_mode;

    double sum_oob = 0, sum_ois = 0, sum_iwg = 0;
    size_t iwg_count = 0;
    std::vector<std::vector<std::string>> categories;
    for (const auto& stage : stages) {
        StageMetrics m;
        m.stage_id = stage.stage_id;
        m.oob_m3 = metric_oob(stage.boxes, cfg).m3();
        m.ois_m3 = metric_ois(stage.boxes).m3();
        if (stage.ground_truth) {
            m.iwg_m3 = metric_iwg(stage.boxes, *stage.ground_truth, iwg_mode).m3();
            sum_iwg += *m.iwg_m3;
            ++iwg_count;
        }
        m.class_count =
            int(std::set<std::string>(stage.categories.begin(), stage.categories.end()).size());
        sum_oob += m.oob_m3;
        sum_ois += m.ois_m3;
        categories.push_back(stage.categories);
        report.per_stage.push_back(std::move(m));
    }

    report.mean_oob_m3 = sum_oob / double(stages.size());
    report.mean_ois_m3 = sum_ois / double(stages.size());
    if (iwg_count) report.mean_iwg_m3 = sum_iwg / double(iwg_count);
    auto diversity = metric_class_diversity(categories);
    report.mean_class_diversity = diversity.mean;
    report.min_classes = diversity.min;
    report.max_classes = diversity.max;
    return report;
}

std::string serialize_report(const MetricsReport& report) {
    json j;
    j["format"] = "metrics-report/1";
    j["iwg_mode"] = report.iwg_mode == IwgMode::union_mode ? "union" : "pairwise_sum";
    j["per_stage"] = json::array();
    for (const auto& m : report.per_stage) {
        json jm;
        jm["stage_id"] = m.stage_id;
        jm["oob_m3"] = m.oob_m3;
        jm["ois_m3"] = m.ois_m3;
        if (m.iwg_m3) jm["iwg_m3"] = *m.iwg_m3;
        jm["class_count"] = m.class_count;
        j["per_stage"].push_back(std::move(jm));
    }
    json agg;
    agg["mean_oob_m3"] = report.mean_oob_m3;
    agg["mean_ois_m3"] = report.mean_ois_m3;
    if (report.mean_iwg_m3) agg["mean_iwg_m3"] = *report.mean_iwg_m3;
    agg["mean_class_diversity"] = report.mean_class_diversity;
    agg["min_classes"] = report.min_classes;
    agg["max_classes"] = report.max_classes;
    j["aggregate"] = std::move(agg);
    return j.dump(2) + "\n";
}

namespace {

// 3 significant figures, plain decimal where reasonable
std::string sig3(double v) {
    std::ostringstream out;
    out << std::setprecision(3) << v;
    return out.str();
}

} // namespace

std::string format_report_table(const MetricsReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "Stage" << std::right << std::setw(16)
        << "Out-of-Bound(m3)" << std::setw(10) << "OIS(m3)" << std::setw(10) << "IWG(m3)"
        << std::setw(9) << "Classes" << "\n";
    for (const auto& m : report.per_stage) {
        out << std::left << std::setw(24) << m.stage_id << std::right << std::setw(16)
            << sig3(m.oob_m3) << std::setw(10) << sig3(m.ois_m3) << std::setw(10)
            << (m.iwg_m3 ? sig3(*m.iwg_m3) : std::string("-")) << std::setw(9)
            << m.class_count << "\n";
    }
    out << std::left << std::setw(24) << "Mean" << std::right << std::setw(16)
        << sig3(report.mean_oob_m3) << std::setw(10) << sig3(report.mean_ois_m3)
        << std::setw(10)
        << (report.mean_iwg_m3 ? sig3(*report.mean_iwg_m3) : std::string("-")) << std::setw(9)
        << sig3(report.mean_class_diversity) << "\n";
    out << "Min/Max Classes: " << report.min_classes << "/" << report.max_classes << "\n";
    return out.str();
}

} // namespace stage
