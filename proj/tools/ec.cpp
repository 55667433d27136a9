// Command-line front end: one subcommand per operation family, text or
// structured (JSON) reports, deterministic output for fixed inputs and seed.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ec/arch.hpp"
#include "ec/creal.hpp"
#include "ec/diagram.hpp"
#include "ec/graph_coding.hpp"
#include "ec/markers.hpp"
#include "ec/ordered_field.hpp"
#include "ec/poly_text.hpp"
#include "ec/rng.hpp"
#include "ec/selftest.hpp"
#include "ec/tower.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) ec::fail(ec::ErrorKind::BadInput, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) ec::fail(ec::ErrorKind::BadInput, "cannot write '" + path + "'");
    out << content;
}

uint64_t applyStageLimit(uint64_t stages) {
    if (const char* cap = std::getenv("EC_STAGE_LIMIT")) {
        uint64_t lim = std::strtoull(cap, nullptr, 10);
        if (lim > 0 && stages > lim) return lim;
    }
    return stages;
}

struct Output {
    bool structured = false;
    json j;
    std::ostringstream text;

    void emit() {
        if (structured)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << text.str();
    }
};

ec::ce::Pi03Predicate loadPredicate(const std::string& spec, const std::string& tableFile) {
    if (!tableFile.empty()) return ec::ce::Pi03Predicate::fromTruthTable(slurp(tableFile));
    return ec::ce::Pi03Predicate::byName(spec);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective codings workbench: graphs, fields, markers, orders, cuts"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // encode-graph
    auto* encodeGraph = app.add_subcommand("encode-graph", "code a digraph into an undirected graph");
    std::string egIn, egOut;
    uint64_t egStages = 0;
    encodeGraph->add_option("--in", egIn, "digraph edge list")->required();
    encodeGraph->add_option("--out", egOut, "output path (stdout when absent)");
    encodeGraph->add_option("--stages", egStages, "streaming mode: run N machine steps, dump the diagram");

    // decode-graph
    auto* decodeGraph = app.add_subcommand("decode-graph", "read the digraph back off a code");
    std::string dgIn;
    decodeGraph->add_option("--in", dgIn, "undirected code edge list")->required();

    // embed-field
    auto* embedField = app.add_subcommand("embed-field", "graph-to-field embedding");
    std::string efIn, efOut;
    bool efPrint = false;
    embedField->add_option("--in", efIn, "digraph edge list")->required();
    embedField->add_option("--out", efOut, "tower json output path");
    embedField->add_flag("--print-radicands", efPrint, "list the adjoined square roots");

    // probe-root
    auto* probeRoot = app.add_subcommand("probe-root", "membership of sqrt(X_i + X_j) in a tower");
    std::string prTower;
    int prI = 0, prJ = 0;
    probeRoot->add_option("--tower", prTower, "tower json")->required();
    probeRoot->add_option("--i", prI, "first variable (1-based)")->required();
    probeRoot->add_option("--j", prJ, "second variable (1-based)")->required();

    // build-vs / build-acf / probe-dim / probe-trdeg
    auto addMarkerOpts = [](CLI::App* cmd, std::string& schedule, uint64_t& stages, int& window,
                            bool* trace) {
        cmd->add_option("--schedule", schedule, "enumeration schedule file: lines 'element stage'")
            ->required();
        cmd->add_option("--stages", stages, "construction steps to run")->capture_default_str();
        cmd->add_option("--window", window, "probe window [0, m)")->capture_default_str();
        if (trace) cmd->add_flag("--trace", *trace, "print one line per served requirement");
    };
    auto* buildVs = app.add_subcommand("build-vs", "movable-marker vector space");
    std::string vsSchedule;
    uint64_t vsStages = 200;
    int vsWindow = 8;
    bool vsTrace = false;
    addMarkerOpts(buildVs, vsSchedule, vsStages, vsWindow, &vsTrace);

    auto* buildAcf = app.add_subcommand("build-acf", "movable-marker algebraically closed field");
    std::string acfSchedule;
    uint64_t acfStages = 200;
    int acfWindow = 6;
    bool acfTrace = false;
    addMarkerOpts(buildAcf, acfSchedule, acfStages, acfWindow, &acfTrace);

    auto* probeDim = app.add_subcommand("probe-dim", "D_n probe on the vector-space construction");
    std::string pdSchedule;
    uint64_t pdStages = 200;
    int pdWindow = 8, pdN = 1;
    addMarkerOpts(probeDim, pdSchedule, pdStages, pdWindow, nullptr);
    probeDim->add_option("--n", pdN, "independence threshold")->required();

    auto* probeTrdeg = app.add_subcommand("probe-trdeg", "T_n probe on the field construction");
    std::string ptSchedule;
    uint64_t ptStages = 200;
    int ptWindow = 6, ptN = 1;
    addMarkerOpts(probeTrdeg, ptSchedule, ptStages, ptWindow, nullptr);
    probeTrdeg->add_option("--n", ptN, "transcendence threshold")->required();

    // encode-order / decode-order
    auto* encodeOrder = app.add_subcommand("encode-order", "linear order into an ordered field");
    std::string eoOrder, eoOut;
    encodeOrder->add_option("--order", eoOrder, "chain, e.g. 2<1<3")->required();
    encodeOrder->add_option("--out", eoOut, "presentation json output path");

    auto* decodeOrder = app.add_subcommand("decode-order", "order back off comparability classes");
    std::string doIn;
    decodeOrder->add_option("--in", doIn, "presentation json")->required();

    // rcf-sign
    auto* rcfSign = app.add_subcommand("rcf-sign", "sign / comparability queries in R(L)");
    std::string rsExpr, rsWith, rsDef = "corrected";
    rcfSign->add_option("--expr", rsExpr, "file: line 1 'order 2<1<3', rest an expression")
        ->required();
    rcfSign->add_option("--preceq-with", rsWith, "second expression: report f preceq g");
    rcfSign->add_option("--definition", rsDef, "preceq reading: corrected|paper")
        ->check(CLI::IsMember({"corrected", "paper"}));

    // arch-run
    auto* archRun = app.add_subcommand("arch-run", "Archimedean cut-tracking construction");
    std::string arPred = "always", arPredFile, arReport = "rows";
    uint64_t arStages = 500, arN = 0;
    int arRows = 4, arPrecision = 20;
    archRun->add_option("--pred", arPred, "predicate: always | fail-at:i | threshold:i,j");
    archRun->add_option("--pred-file", arPredFile, "truth-table file instead of a named predicate");
    archRun->add_option("--stages", arStages, "steps to run")->capture_default_str();
    archRun->add_option("--n", arN, "predicate parameter n")->capture_default_str();
    archRun->add_option("--rows", arRows, "rows to track")->capture_default_str();
    archRun->add_option("--precision", arPrecision, "report precision bits")->capture_default_str();
    archRun->add_option("--report", arReport, "rows|trace")->check(CLI::IsMember({"rows", "trace"}));

    // selftest
    auto* selftest = app.add_subcommand("selftest", "seeded randomized property suites");
    uint64_t stSeed = 7;
    int stTrials = 20;
    std::string stSuite;
    selftest->add_option("--seed", stSeed, "rng seed")->capture_default_str();
    selftest->add_option("--trials", stTrials, "trials per suite")->capture_default_str();
    selftest->add_option("--suite", stSuite, "run a single named suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    Output out;
    out.structured = format == "structured";

    try {
        if (*encodeGraph) {
            ec::Digraph g = ec::Digraph::fromEdgeListText(slurp(egIn));
            if (egStages > 0) {
                uint64_t steps = applyStageLimit(egStages);
                auto st = ec::gcode::CodingState::start(g);
                for (uint64_t k = 0; k < steps; ++k) st.advance();
                std::string diagram = st.diagram.serialize();
                if (!egOut.empty()) spill(egOut, diagram);
                out.j["mode"] = "streaming";
                out.j["steps"] = steps;
                out.j["facts"] = st.diagram.facts().size();
                out.j["diagram"] = diagram;
                out.text << (egOut.empty() ? diagram : "wrote " + egOut + "\n");
            } else {
                auto H = ec::gcode::encodeFinite(g);
                std::string text = H.toEdgeListText();
                if (!egOut.empty()) spill(egOut, text);
                out.j["nodes"] = H.n;
                out.j["vertices"] = g.n;
                out.j["edges"] = g.edges.size();
                out.j["graph"] = text;
                out.text << (egOut.empty() ? text
                                           : "wrote " + egOut + " (" + std::to_string(H.n) + " nodes)\n");
            }
        } else if (*decodeGraph) {
            auto H = ec::diagram::FiniteStructure::undirectedFromEdgeListText(slurp(dgIn));
            ec::Digraph g = ec::gcode::decode(H);
            out.j["vertices"] = g.n;
            auto arr = json::array();
            for (const auto& [a, b] : g.edges) arr.push_back({a, b});
            out.j["edges"] = arr;
            out.text << g.toEdgeListText();
        } else if (*embedField) {
            ec::Digraph g = ec::Digraph::fromEdgeListText(slurp(efIn));
            auto tower = ec::field::fsEmbed(g);
            if (!efOut.empty()) spill(efOut, tower.toJson());
            out.j["baseVars"] = tower.baseVars();
            auto arr = json::array();
            for (const auto& r : tower.radicands()) arr.push_back(r.str());
            out.j["radicands"] = arr;
            if (efPrint || efOut.empty()) {
                out.text << "base variables: " << tower.baseVars() << "\n";
                for (const auto& r : tower.radicands()) out.text << "sqrt( " << r.str() << " )\n";
            }
            if (!efOut.empty()) out.text << "wrote " << efOut << "\n";
        } else if (*probeRoot) {
            auto tower = ec::field::Tower::fromJson(slurp(prTower));
            if (prI < 1 || prJ < 1) ec::fail(ec::ErrorKind::BadInput, "--i/--j are 1-based");
            auto d = ec::field::RatFunc::var(prI - 1) + ec::field::RatFunc::var(prJ - 1);
            auto w = ec::field::rootMembership(tower, d);
            out.j["probe"] = d.str();
            out.j["member"] = w.has_value();
            if (w) {
                auto arr = json::array();
                for (size_t i = 0; i < tower.size(); ++i)
                    if (w->mask & (1u << i)) arr.push_back(i + 1);
                out.j["witnessSubset"] = arr;
                out.j["witnessRoot"] = w->root.str();
                out.text << "member: sqrt( " << d.str() << " ) present, witness subset mask "
                         << w->mask << ", root " << w->root.str() << "\n";
            } else {
                out.text << "absent: sqrt( " << d.str() << " ) is not in the tower\n";
            }
        } else if (*buildVs || *probeDim) {
            bool probing = static_cast<bool>(*probeDim);
            const std::string& schedPath = probing ? pdSchedule : vsSchedule;
            uint64_t stages = applyStageLimit(probing ? pdStages : vsStages);
            int window = probing ? pdWindow : vsWindow;
            auto W = ec::ce::CeSchedule::parse(slurp(schedPath));
            auto table = ec::markers::buildVs(W, stages, window);
            int dim = ec::markers::vsDimension(table, window);
            out.j["stages"] = stages;
            out.j["window"] = window;
            out.j["dimension"] = dim;
            out.j["moves"] = table.moves.size();
            out.j["facts"] = table.facts.size();
            if (probing) {
                bool holds = dim >= pdN;
                out.j["n"] = pdN;
                out.j["Dn"] = holds;
                out.text << "D_" << pdN << " is " << (holds ? "true" : "false") << " (dimension "
                         << dim << " on [0," << window << "))\n";
            } else {
                out.text << "dimension " << dim << " on [0," << window << "), " << table.moves.size()
                         << " moves, " << table.facts.size() << " facts\n";
                if (vsTrace)
                    for (const auto& line : table.trace) out.text << line << "\n";
            }
            if (vsTrace && out.structured) out.j["trace"] = table.trace;
        } else if (*buildAcf || *probeTrdeg) {
            bool probing = static_cast<bool>(*probeTrdeg);
            const std::string& schedPath = probing ? ptSchedule : acfSchedule;
            uint64_t stages = applyStageLimit(probing ? ptStages : acfStages);
            int window = probing ? ptWindow : acfWindow;
            auto W = ec::ce::CeSchedule::parse(slurp(schedPath));
            auto table = ec::markers::buildAcf(W, stages, window);
            int deg = ec::markers::acfTrdeg(table, window);
            out.j["stages"] = stages;
            out.j["window"] = window;
            out.j["trdeg"] = deg;
            out.j["moves"] = table.moves.size();
            out.j["facts"] = table.facts.size();
            if (probing) {
                bool holds = deg >= ptN;
                out.j["n"] = ptN;
                out.j["Tn"] = holds;
                out.text << "T_" << ptN << " is " << (holds ? "true" : "false")
                         << " (transcendence degree " << deg << " on [0," << window << "))\n";
            } else {
                out.text << "transcendence degree " << deg << " on [0," << window << "), "
                         << table.moves.size() << " moves, " << table.facts.size() << " facts\n";
                if (acfTrace)
                    for (const auto& line : table.trace) out.text << line << "\n";
            }
            if (acfTrace && out.structured) out.j["trace"] = table.trace;
        } else if (*encodeOrder) {
            auto L = ec::rcf::LinearOrder::parse(eoOrder);
            auto p = ec::rcf::OrderedPresentation::encode(L);
            std::string jsonText = p.toJson();
            if (!eoOut.empty()) spill(eoOut, jsonText);
            out.j["order"] = L.str();
            out.j["generators"] = L.size();
            out.text << (eoOut.empty() ? jsonText : "wrote " + eoOut + "\n");
        } else if (*decodeOrder) {
            auto p = ec::rcf::OrderedPresentation::fromJson(slurp(doIn));
            auto L = ec::rcf::decodeOrder(p);
            out.j["order"] = L.str();
            out.text << L.str() << "\n";
        } else if (*rcfSign) {
            std::istringstream in(slurp(rsExpr));
            std::string header;
            std::getline(in, header);
            if (header.rfind("order ", 0) != 0)
                ec::fail(ec::ErrorKind::BadInput, "--expr file must start with 'order <chain>'");
            auto L = ec::rcf::LinearOrder::parse(header.substr(6));
            auto p = ec::rcf::OrderedPresentation::encode(L);
            std::string exprText((std::istreambuf_iterator<char>(in)), {});
            auto f = ec::field::parseRatFunc(exprText);
            int s = ec::rcf::sign(p, f);
            out.j["order"] = L.str();
            out.j["expr"] = f.str();
            out.j["sign"] = s;
            out.text << "sign(" << f.str() << ") = " << (s > 0 ? "+" : s < 0 ? "-" : "0") << "\n";
            if (!rsWith.empty()) {
                auto g = ec::field::parseRatFunc(rsWith);
                bool r = rsDef == "paper" ? ec::rcf::preceqPaperLiteral(p, f, g)
                                          : ec::rcf::preceq(p, f, g);
                out.j["preceqWith"] = g.str();
                out.j["definition"] = rsDef;
                out.j["preceq"] = r;
                out.text << "preceq[" << rsDef << "](" << f.str() << ", " << g.str() << ") = "
                         << (r ? "true" : "false") << "\n";
            }
        } else if (*archRun) {
            uint64_t stages = applyStageLimit(arStages);
            auto pred = loadPredicate(arPred, arPredFile);
            auto st = ec::rcf::archEncode(pred, arN, stages, arRows);
            out.j["predicate"] = pred.name;
            out.j["stages"] = stages;
            out.j["rows"] = arRows;
            out.j["facts"] = st.facts.size();
            auto rowsArr = json::array();
            uint64_t sFinal = st.steps == 0 ? 0 : (st.steps - 1) / 2;
            for (int t = 0; t < arRows && static_cast<uint64_t>(t) < sFinal; ++t) {
                auto cs = ec::rcf::cutStatus(st, t, arPrecision);
                json row;
                row["row"] = t;
                row["liveMarker"] = cs.liveMarker;
                row["retreats"] = cs.retreatCount;
                row["lo"] = cs.enclosure.lo.str();
                row["hi"] = cs.enclosure.hi.str();
                rowsArr.push_back(row);
                out.text << "row " << t << ": live marker " << cs.liveMarker << ", retreats "
                         << cs.retreatCount << ", target in [" << cs.enclosure.lo.str() << ", "
                         << cs.enclosure.hi.str() << "]\n";
            }
            out.j["rowsReport"] = rowsArr;
            if (arReport == "trace") {
                if (out.structured) out.j["trace"] = st.trace;
                for (const auto& line : st.trace) out.text << line << "\n";
            }
        } else if (*selftest) {
            ec::SelftestConfig cfg;
            cfg.seed = stSeed;
            cfg.trials = stTrials;
            cfg.onlySuite = stSuite;
            auto result = ec::runSelftest(cfg);
            if (out.structured) {
                std::cout << result.structuredReport();
            } else {
                std::cout << result.textReport();
            }
            return result.allPassed() ? kExitOk : kExitDomain;
        }
    } catch (const ec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }

    out.emit();
    return kExitOk;
}
