#include "gx/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "gx/errors.hpp"
#include "gx/rng.hpp"

namespace fs = std::filesystem;

namespace gx {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, const char* where) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

SearchConfig search_from_json(const Json& j, const SearchConfig& base, const char* where) {
    check_keys(j, {"iterations", "cPuct", "dirichletAlpha", "noiseWeight", "temperatureMoves"},
               where);
    SearchConfig cfg = base;
    cfg.iterations = get_or<int>(j, "iterations", base.iterations, where);
    cfg.cPuct = get_or<double>(j, "cPuct", base.cPuct, where);
    if (j.contains("dirichletAlpha")) {
        if (j.at("dirichletAlpha").is_null())
            cfg.rootDirichletAlpha.reset();
        else
            cfg.rootDirichletAlpha = get_or<double>(j, "dirichletAlpha", 0.3, where);
    }
    cfg.rootNoiseWeight = get_or<double>(j, "noiseWeight", base.rootNoiseWeight, where);
    cfg.temperatureMoves = get_or<int>(j, "temperatureMoves", base.temperatureMoves, where);
    cfg.validate();
    return cfg;
}

Json search_to_json(const SearchConfig& cfg) {
    Json j;
    j["iterations"] = cfg.iterations;
    j["cPuct"] = cfg.cPuct;
    if (cfg.rootDirichletAlpha)
        j["dirichletAlpha"] = *cfg.rootDirichletAlpha;
    else
        j["dirichletAlpha"] = nullptr;
    j["noiseWeight"] = cfg.rootNoiseWeight;
    j["temperatureMoves"] = cfg.temperatureMoves;
    return j;
}

int line_of_offset(const std::string& text, size_t offset) {
    int line = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
            out.push_back(c);
        else
            out.push_back('_');
    }
    return out.empty() ? std::string("x") : out;
}

std::string format_pct(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

bool same_channel_semantics(const GameConfig& a, const GameConfig& b) {
    return build_state_spec(a).channels == build_state_spec(b).channels &&
           build_action_spec(a).channels == build_action_spec(b).channels;
}

const char* family_name(GameFamily f) {
    switch (f) {
        case GameFamily::hex: return "hex";
        case GameFamily::lineGame: return "line";
        case GameFamily::breakthrough: return "breakthrough";
    }
    return "?";
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    cfg.selfplay.iterations = 100;
    cfg.evalSearch.iterations = 100;
    cfg.evalSearch.rootDirichletAlpha.reset();
    cfg.training.optimizer.learningRate = 0.01;
    cfg.training.optimizer.momentum = 0.9;
    cfg.training.optimizer.weightDecay = 1e-4;
    return cfg;
}

NetworkConfig ExperimentConfig::networkConfig() const {
    StateTensorSpec s = build_state_spec(game);
    ActionTensorSpec a = build_action_spec(game);
    NetworkConfig net;
    net.cState = s.channelCount();
    net.cAction = a.channelCount();
    net.hiddenChannels = hiddenChannels > 0 ? hiddenChannels : hiddenMultiplier * net.cState;
    net.blocks = blocks;
    net.layersPerBlock = layersPerBlock;
    net.valueChannels = valueChannels;
    net.validate();
    return net;
}

ExperimentConfig experiment_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config: JSON parse error at line " +
                          std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    check_keys(j, {"game", "network", "selfplay", "evalSearch", "training", "seed", "outDir",
                   "workers", "evalGames"},
               "config");
    ExperimentConfig cfg = ExperimentConfig::defaults();
    if (j.contains("game")) cfg.game = game_config_from_json(j.at("game"));
    if (j.contains("network")) {
        const Json& n = j.at("network");
        check_keys(n, {"hiddenMultiplier", "hiddenChannels", "blocks", "layersPerBlock",
                       "valueChannels"},
                   "network");
        cfg.hiddenMultiplier = get_or<int>(n, "hiddenMultiplier", cfg.hiddenMultiplier, "network");
        cfg.hiddenChannels = get_or<int>(n, "hiddenChannels", cfg.hiddenChannels, "network");
        cfg.blocks = get_or<int>(n, "blocks", cfg.blocks, "network");
        cfg.layersPerBlock = get_or<int>(n, "layersPerBlock", cfg.layersPerBlock, "network");
        cfg.valueChannels = get_or<int>(n, "valueChannels", cfg.valueChannels, "network");
    }
    if (j.contains("selfplay")) cfg.selfplay = search_from_json(j.at("selfplay"), cfg.selfplay, "selfplay");
    if (j.contains("evalSearch"))
        cfg.evalSearch = search_from_json(j.at("evalSearch"), cfg.evalSearch, "evalSearch");
    if (j.contains("training")) {
        const Json& t = j.at("training");
        check_keys(t, {"epochs", "episodesPerEpoch", "batchesPerEpoch", "batchSize",
                       "replayCapacity", "replayWarmup", "learningRate", "momentum",
                       "weightDecay"},
                   "training");
        TrainConfig& tc = cfg.training;
        tc.epochs = get_or<int>(t, "epochs", tc.epochs, "training");
        tc.episodesPerEpoch = get_or<int>(t, "episodesPerEpoch", tc.episodesPerEpoch, "training");
        tc.batchesPerEpoch = get_or<int>(t, "batchesPerEpoch", tc.batchesPerEpoch, "training");
        tc.batchSize = get_or<int>(t, "batchSize", tc.batchSize, "training");
        tc.replayCapacity = get_or<size_t>(t, "replayCapacity", tc.replayCapacity, "training");
        tc.replayWarmup = get_or<size_t>(t, "replayWarmup", tc.replayWarmup, "training");
        tc.optimizer.learningRate =
            get_or<double>(t, "learningRate", tc.optimizer.learningRate, "training");
        tc.optimizer.momentum = get_or<double>(t, "momentum", tc.optimizer.momentum, "training");
        tc.optimizer.weightDecay =
            get_or<double>(t, "weightDecay", tc.optimizer.weightDecay, "training");
    }
    cfg.seed = get_or<uint64_t>(j, "seed", cfg.seed, "config");
    cfg.outDir = get_or<std::string>(j, "outDir", cfg.outDir, "config");
    cfg.workers = get_or<int>(j, "workers", cfg.workers, "config");
    cfg.evalGames = get_or<int>(j, "evalGames", cfg.evalGames, "config");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    cfg.game.validate();
    cfg.training.validate();
    cfg.networkConfig();  // validates the network knobs against the game
    return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return experiment_from_json_text(buf.str());
}

Json experiment_to_json(const ExperimentConfig& cfg) {
    Json j;
    j["game"] = game_config_to_json(cfg.game);
    Json n;
    n["hiddenMultiplier"] = cfg.hiddenMultiplier;
    n["hiddenChannels"] = cfg.hiddenChannels;
    n["blocks"] = cfg.blocks;
    n["layersPerBlock"] = cfg.layersPerBlock;
    n["valueChannels"] = cfg.valueChannels;
    j["network"] = n;
    j["selfplay"] = search_to_json(cfg.selfplay);
    j["evalSearch"] = search_to_json(cfg.evalSearch);
    Json t;
    t["epochs"] = cfg.training.epochs;
    t["episodesPerEpoch"] = cfg.training.episodesPerEpoch;
    t["batchesPerEpoch"] = cfg.training.batchesPerEpoch;
    t["batchSize"] = cfg.training.batchSize;
    t["replayCapacity"] = cfg.training.replayCapacity;
    t["replayWarmup"] = cfg.training.replayWarmup;
    t["learningRate"] = cfg.training.optimizer.learningRate;
    t["momentum"] = cfg.training.optimizer.momentum;
    t["weightDecay"] = cfg.training.optimizer.weightDecay;
    j["training"] = t;
    j["seed"] = cfg.seed;
    j["outDir"] = cfg.outDir;
    j["workers"] = cfg.workers;
    j["evalGames"] = cfg.evalGames;
    return j;
}

namespace {

std::string epoch_checkpoint_name(int epoch) {
    std::ostringstream os;
    os << "checkpoint_epoch_" << std::setw(4) << std::setfill('0') << epoch << ".gmrf";
    return os.str();
}

void run_training(const ExperimentConfig& cfg, Network& net, long long stepOffset) {
    fs::create_directories(cfg.outDir);
    std::ofstream log(fs::path(cfg.outDir) / "train_log.jsonl", std::ios::trunc);
    if (!log) throw DataError("cannot open train log in '" + cfg.outDir + "'");

    TrainConfig tc = cfg.training;
    tc.workers = cfg.workers;
    CheckpointMeta meta;
    meta.game = cfg.game;
    meta.network = net.cfg;
    meta.rngSeed = cfg.seed;

    auto callback = [&](const EpochStats& stats, const Network& current) {
        meta.trainingStep = stepOffset + stats.stepsDone;
        save_checkpoint(current, meta,
                        (fs::path(cfg.outDir) / epoch_checkpoint_name(stats.epoch)).string());
        Json line;
        line["epoch"] = stats.epoch;
        line["bufferSize"] = stats.bufferSize;
        if (stats.trained)
            line["meanLoss"] = stats.meanLoss;
        else
            line["meanLoss"] = nullptr;
        line["episodes"] = stats.episodesPlayed;
        log << line.dump() << "\n";
    };
    long long stepsDone = 0;
    train_loop(cfg.game, net, tc, cfg.selfplay, cfg.seed,
               [&](const EpochStats& s, const Network& n) {
                   stepsDone = s.stepsDone;
                   callback(s, n);
               });
    meta.trainingStep = stepOffset + stepsDone;
    save_checkpoint(net, meta, (fs::path(cfg.outDir) / "checkpoint_final.gmrf").string());
}

}  // namespace

void run_train(const ExperimentConfig& cfg) {
    std::mt19937_64 initRng(mix_seed(cfg.seed, 0x1217));
    Network net(cfg.networkConfig(), initRng);
    run_training(cfg, net, 0);
}

TransferRun run_transfer(const std::string& srcCheckpoint, const ExperimentConfig& target,
                         TransferInit mode) {
    LoadedCheckpoint src = load_checkpoint(srcCheckpoint);
    DomainSpecs srcSpecs{build_state_spec(src.meta.game), build_action_spec(src.meta.game)};
    DomainSpecs tgtSpecs{build_state_spec(target.game), build_action_spec(target.game)};
    TransferMode tm;
    tm.init = mode;
    TransplantResult tr =
        transplant(src.net, srcSpecs, tgtSpecs, tm, mix_seed(target.seed, 0x7247));

    fs::create_directories(target.outDir);
    TransferRun out;
    out.checkpointPath = (fs::path(target.outDir) / "transferred.gmrf").string();
    out.reportPath = (fs::path(target.outDir) / "mapping_report.txt").string();
    CheckpointMeta meta;
    meta.game = target.game;
    meta.network = tr.net.cfg;
    meta.trainingStep = src.meta.trainingStep;
    meta.rngSeed = target.seed;
    save_checkpoint(tr.net, meta, out.checkpointPath);
    std::ofstream report(out.reportPath, std::ios::trunc);
    report << "transfer: " << game_config_label(src.meta.game) << " -> "
           << game_config_label(target.game) << "\n"
           << "mode: " << (mode == TransferInit::zeroShot ? "zero-shot" : "finetune-init")
           << "\n\n"
           << tr.report;
    out.stateMapping = std::move(tr.stateMapping);
    out.actionMapping = std::move(tr.actionMapping);
    return out;
}

void run_finetune(const std::string& checkpoint, const ExperimentConfig& cfg,
                  bool reinitFinalLayers) {
    LoadedCheckpoint lc = load_checkpoint(checkpoint);
    StateTensorSpec s = build_state_spec(cfg.game);
    ActionTensorSpec a = build_action_spec(cfg.game);
    if (lc.net.cfg.cState != s.channelCount() || lc.net.cfg.cAction != a.channelCount())
        throw DataError("finetune: checkpoint dims do not match the configured game");
    if (!same_channel_semantics(lc.meta.game, cfg.game))
        throw DataError("finetune: checkpoint channel semantics do not match the game");
    if (reinitFinalLayers) reinit_final_layers(lc.net, mix_seed(cfg.seed, 0xF17A));
    run_training(cfg, lc.net, lc.meta.trainingStep);
}

std::string agent_label(const std::string& agentText) {
    if (agentText == "random" || agentText == "uct" || agentText == "untrained")
        return agentText;
    fs::path p(agentText);
    std::string stem = p.stem().string();
    if (stem.rfind("checkpoint", 0) == 0 || stem == "transferred") {
        std::string parent = p.parent_path().filename().string();
        if (!parent.empty()) return parent;
    }
    return stem;
}

namespace {

struct BuiltAgent {
    std::unique_ptr<Agent> agent;
    std::shared_ptr<const Network> net;  // keeps checkpoint networks alive
};

BuiltAgent make_agent(const std::string& text, const ExperimentConfig& cfg, int iters,
                      uint64_t saltForUntrained) {
    BuiltAgent out;
    SearchConfig search = cfg.evalSearch;
    search.iterations = iters;
    if (text == "random") {
        out.agent = std::make_unique<RandomAgent>();
    } else if (text == "uct") {
        out.agent = std::make_unique<UctAgent>(iters);
    } else if (text == "untrained") {
        std::mt19937_64 rng(mix_seed(cfg.seed, 0x0417, saltForUntrained));
        out.net = std::make_shared<const Network>(cfg.networkConfig(), rng);
        out.agent = std::make_unique<MctsNetAgent>(out.net, cfg.game, search);
    } else {
        LoadedCheckpoint lc = load_checkpoint(text);
        if (!same_channel_semantics(lc.meta.game, cfg.game))
            throw DataError("eval: checkpoint '" + text +
                            "' channel semantics do not match the configured game");
        out.net = std::make_shared<const Network>(std::move(lc.net));
        out.agent = std::make_unique<MctsNetAgent>(out.net, cfg.game, search);
    }
    return out;
}

}  // namespace

EvalRun run_eval(const std::string& agentA, const std::string& agentB,
                 const ExperimentConfig& cfg, int nGames, int itersA, int itersB) {
    if (nGames < 1) throw ConfigError("eval: games must be >= 1");
    if (itersA < 1 || itersB < 1) throw ConfigError("eval: iterations must be >= 1");
    BuiltAgent a = make_agent(agentA, cfg, itersA, 0xA);
    BuiltAgent b = make_agent(agentB, cfg, itersB, 0xB);
    MatchResult match = play_match(cfg.game, *a.agent, *b.agent, nGames, cfg.seed, cfg.workers);

    fs::create_directories(cfg.outDir);
    std::string labelA = agent_label(agentA);
    std::string labelB = agent_label(agentB);
    std::string gameLabel = game_config_label(cfg.game);
    std::string base = sanitize(labelA) + "__vs__" + sanitize(labelB) + "__" + sanitize(gameLabel);

    EvalRun out;
    out.match = match;
    out.gamesPath = (fs::path(cfg.outDir) / (base + ".games.jsonl")).string();
    out.summaryPath = (fs::path(cfg.outDir) / (base + ".summary.json")).string();
    out.csvPath = (fs::path(cfg.outDir) / (base + ".csv")).string();

    std::ofstream games(out.gamesPath, std::ios::trunc);
    for (const GameRecord& rec : match.records) {
        Json g;
        g["game"] = rec.index;
        g["first"] = std::string(1, rec.firstSeat);
        g["winner"] = rec.winner == 0 ? "draw" : (rec.winner == 1 ? "A" : "B");
        g["plies"] = rec.plies;
        g["seed"] = rec.seed;
        games << g.dump() << "\n";
    }

    Json summary;
    summary["family"] = family_name(cfg.game.family);
    summary["source"] = labelA;
    summary["target"] = gameLabel;
    summary["opponent"] = labelB;
    summary["game"] = game_config_to_json(cfg.game);
    summary["games"] = match.gamesPlayed;
    summary["winsA"] = match.winsA;
    summary["winsB"] = match.winsB;
    summary["draws"] = match.draws;
    summary["winPctA"] = match.winPctA();
    summary["winPctB"] = match.winPctB();
    summary["seed"] = cfg.seed;
    summary["itersA"] = itersA;
    summary["itersB"] = itersB;
    std::ofstream sf(out.summaryPath, std::ios::trunc);
    sf << summary.dump(2) << "\n";

    std::ofstream csv(out.csvPath, std::ios::trunc);
    csv << "family,source,target,opponent,games,winsA,winsB,draws,winPctA\n";
    csv << family_name(cfg.game.family) << "," << labelA << "," << gameLabel << "," << labelB
        << "," << match.gamesPlayed << "," << match.winsA << "," << match.winsB << ","
        << match.draws << "," << format_pct(match.winPctA()) << "\n";
    return out;
}

namespace {

struct SummaryEntry {
    std::string family, source, target;
    long long games = 0, winsA = 0, winsB = 0, draws = 0;
    double winPct() const {
        return games ? 100.0 * (winsA + 0.5 * draws) / static_cast<double>(games) : 0.0;
    }
};

SummaryEntry read_summary(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw DataError("report: cannot open '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(is);
    } catch (const Json::exception& e) {
        throw DataError("report: malformed result file '" + path.string() + "': " + e.what());
    }
    SummaryEntry e;
    try {
        e.family = j.at("family").get<std::string>();
        e.source = j.at("source").get<std::string>();
        e.target = j.at("target").get<std::string>();
        e.games = j.at("games").get<long long>();
        e.winsA = j.at("winsA").get<long long>();
        e.winsB = j.at("winsB").get<long long>();
        e.draws = j.at("draws").get<long long>();
    } catch (const Json::exception& e2) {
        throw DataError("report: malformed result file '" + path.string() + "': " + e2.what());
    }
    // Cross-check against the raw per-game records when they are present.
    std::string gamesFile = path.string();
    const std::string suffix = ".summary.json";
    gamesFile.replace(gamesFile.size() - suffix.size(), suffix.size(), ".games.jsonl");
    if (fs::exists(gamesFile)) {
        long long wa = 0, wb = 0, dr = 0, total = 0;
        std::ifstream gf(gamesFile);
        std::string line;
        while (std::getline(gf, line)) {
            if (line.empty()) continue;
            Json g;
            try {
                g = Json::parse(line);
            } catch (const Json::exception& e3) {
                throw DataError("report: malformed result file '" + gamesFile + "': " + e3.what());
            }
            std::string w = g.value("winner", "");
            if (w == "A") ++wa;
            else if (w == "B") ++wb;
            else ++dr;
            ++total;
        }
        if (wa != e.winsA || wb != e.winsB || dr != e.draws || total != e.games)
            throw DataError("report: aggregates in '" + path.string() +
                            "' disagree with per-game records in '" + gamesFile + "'");
    }
    return e;
}

}  // namespace

void run_report(const std::string& resultsDir, const std::string& outDir) {
    if (!fs::exists(resultsDir)) throw DataError("report: no such directory '" + resultsDir + "'");
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(resultsDir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > 13 && name.ends_with(".summary.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    // family -> source -> target -> aggregate
    std::map<std::string, std::map<std::string, std::map<std::string, SummaryEntry>>> matrices;
    for (const fs::path& f : files) {
        SummaryEntry e = read_summary(f);
        SummaryEntry& agg = matrices[e.family][e.source][e.target];
        agg.family = e.family;
        agg.source = e.source;
        agg.target = e.target;
        agg.games += e.games;
        agg.winsA += e.winsA;
        agg.winsB += e.winsB;
        agg.draws += e.draws;
    }

    fs::create_directories(outDir);
    std::ofstream md(fs::path(outDir) / "report.md", std::ios::trunc);
    md << "# Match report\n\n";
    md << "Win percentage of the source-domain agent, evaluated in the target domain.\n";
    md << "Draws count as half-wins: win% = (wins + draws/2) / games * 100.\n";

    for (const auto& [family, bySource] : matrices) {
        std::set<std::string> targets;
        for (const auto& [src, byTarget] : bySource)
            for (const auto& [tgt, e] : byTarget) targets.insert(tgt);

        md << "\n## " << family << "\n\n";
        md << "| source \\ target |";
        for (const auto& t : targets) md << " " << t << " |";
        md << "\n|---|";
        for (size_t i = 0; i < targets.size(); ++i) md << "---|";
        md << "\n";

        std::ofstream csv(fs::path(outDir) / ("report_" + sanitize(family) + ".csv"),
                          std::ios::trunc);
        csv << "source\\target";
        for (const auto& t : targets) csv << "," << t;
        csv << "\n";

        for (const auto& [src, byTarget] : bySource) {
            md << "| " << src << " |";
            csv << src;
            for (const auto& t : targets) {
                std::string cell;
                if (src == t)
                    cell = "-";
                else if (auto it = byTarget.find(t); it != byTarget.end())
                    cell = format_pct(it->second.winPct());
                md << " " << cell << " |";
                csv << "," << cell;
            }
            md << "\n";
            csv << "\n";
        }
    }
}

}  // namespace gx
