#include "ampqed/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ampqed/errors.hpp"

namespace ampqed {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

double parse_number(const std::string& tok, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number for " + context + ", got '" + tok + "'");
    }
    if (used != tok.size())
        throw ConfigError("trailing characters in number for " + context + ": '" + tok + "'");
    return v;
}

long parse_integer(const std::string& tok, const std::string& context) {
    const double v = parse_number(tok, context);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("expected an integer for " + context + ", got '" + tok + "'");
    return n;
}

} // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> suites = {
        "validate-kernel", "spectrum", "green-identities", "pole-scan",
        "commutator",      "correlations", "compare-naive"};
    return suites;
}

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig cfg;
    cfg.raw_text = text;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto fail = [&](const std::string& msg) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + msg);
    };

    enum class Section { Top, Constants, Grid, Frequencies, Tolerances, Layer, PoleScan };
    Section section = Section::Top;
    Layer layer;

    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];

        if (section != Section::Top) {
            if (key == "end") {
                if (section == Section::Layer) {
                    cfg.model.layers.push_back(layer);
                    layer = Layer{};
                }
                section = Section::Top;
                continue;
            }
            switch (section) {
            case Section::Constants:
                if (tok.size() != 2) fail("constants entries are '<name> <value>'");
                if (key == "c") cfg.constants.c = parse_number(tok[1], "c");
                else if (key == "eps0") cfg.constants.eps0 = parse_number(tok[1], "eps0");
                else if (key == "mu0") cfg.constants.mu0 = parse_number(tok[1], "mu0");
                else if (key == "hbar") cfg.constants.hbar = parse_number(tok[1], "hbar");
                else fail("unknown constant '" + key + "'");
                break;
            case Section::Grid:
                if (key == "extent" && tok.size() == 3) {
                    cfg.z_min = parse_number(tok[1], "extent");
                    cfg.z_max = parse_number(tok[2], "extent");
                } else if (key == "nodes" && tok.size() == 2) {
                    cfg.nodes = static_cast<int>(parse_integer(tok[1], "nodes"));
                } else {
                    fail("grid section accepts 'extent <z0> <z1>' and 'nodes <n>'");
                }
                break;
            case Section::Frequencies:
                if (key == "band" && tok.size() == 4) {
                    cfg.band_lo = parse_number(tok[1], "band");
                    cfg.band_hi = parse_number(tok[2], "band");
                    cfg.band_count = static_cast<int>(parse_integer(tok[3], "band"));
                } else if (key == "cutoff-factor" && tok.size() == 2) {
                    cfg.cutoff_factor = parse_number(tok[1], "cutoff-factor");
                } else if (key == "cutoff-nodes" && tok.size() == 2) {
                    cfg.cutoff_nodes = static_cast<int>(parse_integer(tok[1], "cutoff-nodes"));
                } else {
                    fail("frequencies section accepts 'band <lo> <hi> <n>', "
                         "'cutoff-factor <f>', 'cutoff-nodes <n>'");
                }
                break;
            case Section::Tolerances:
                if (key == "eps-reg" && tok.size() == 2)
                    cfg.eps_reg = parse_number(tok[1], "eps-reg");
                else if (key == "solver" && tok.size() == 2)
                    cfg.solver_tol = parse_number(tok[1], "solver");
                else
                    fail("tolerances section accepts 'eps-reg <v>' and 'solver <v>'");
                break;
            case Section::Layer:
                if (key == "from" && tok.size() == 2)
                    layer.z_min = parse_number(tok[1], "from");
                else if (key == "to" && tok.size() == 2)
                    layer.z_max = parse_number(tok[1], "to");
                else if (key == "nonlocal" && tok.size() == 2)
                    layer.nonlocal_length = parse_number(tok[1], "nonlocal");
                else if (key == "oscillator" && tok.size() == 9) {
                    Oscillator o;
                    for (std::size_t i = 1; i < 9; i += 2) {
                        const std::string& field = tok[i];
                        const double v = parse_number(tok[i + 1], "oscillator " + field);
                        if (field == "f") o.strength = v;
                        else if (field == "omega0") o.omega0 = v;
                        else if (field == "gamma") o.gamma = v;
                        else if (field == "plasma") o.plasma = v;
                        else fail("unknown oscillator field '" + field + "'");
                    }
                    layer.oscillators.push_back(o);
                } else {
                    fail("layer section accepts 'from', 'to', 'nonlocal', "
                         "'oscillator f <v> omega0 <v> gamma <v> plasma <v>'");
                }
                break;
            case Section::PoleScan:
                if (key == "re" && tok.size() == 3) {
                    cfg.scan.re_min = parse_number(tok[1], "re");
                    cfg.scan.re_max = parse_number(tok[2], "re");
                } else if (key == "im" && tok.size() == 3) {
                    cfg.scan.im_min = parse_number(tok[1], "im");
                    cfg.scan.im_max = parse_number(tok[2], "im");
                } else if (key == "resolution" && tok.size() == 3) {
                    cfg.scan.n_re = static_cast<int>(parse_integer(tok[1], "resolution"));
                    cfg.scan.n_im = static_cast<int>(parse_integer(tok[2], "resolution"));
                } else {
                    fail("pole-scan section accepts 're <lo> <hi>', 'im <lo> <hi>', "
                         "'resolution <nr> <ni>'");
                }
                cfg.scan_configured = true;
                break;
            default:
                fail("internal parser state");
            }
            continue;
        }

        if (key == "scenario" && tok.size() == 2) {
            cfg.name = tok[1];
        } else if (key == "seed" && tok.size() == 2) {
            cfg.seed = static_cast<std::uint64_t>(parse_integer(tok[1], "seed"));
        } else if (key == "units" && tok.size() == 2) {
            if (tok[1] == "natural") cfg.constants = Constants::natural();
            else if (tok[1] == "si") cfg.constants = Constants::si();
            else fail("units must be 'natural' or 'si'");
        } else if (key == "constants" && tok.size() == 1) {
            section = Section::Constants;
        } else if (key == "grid" && tok.size() == 1) {
            section = Section::Grid;
        } else if (key == "frequencies" && tok.size() == 1) {
            section = Section::Frequencies;
        } else if (key == "tolerances" && tok.size() == 1) {
            section = Section::Tolerances;
        } else if (key == "layer" && tok.size() == 2) {
            section = Section::Layer;
            layer = Layer{};
            layer.name = tok[1];
        } else if (key == "pole-scan" && tok.size() == 1) {
            section = Section::PoleScan;
        } else if (key == "analyses") {
            cfg.analyses.assign(tok.begin() + 1, tok.end());
        } else if (key == "export-kernels" && tok.size() == 2) {
            if (tok[1] == "on") cfg.export_kernels = true;
            else if (tok[1] == "off") cfg.export_kernels = false;
            else fail("export-kernels must be 'on' or 'off'");
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (section != Section::Top) throw ConfigError("unterminated section (missing 'end')");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void ScenarioConfig::validate() const {
    if (name.empty()) throw ConfigError("scenario name is required");
    if (!(z_max > z_min)) throw ConfigError("grid extent needs z_max > z_min");
    if (nodes < 16) throw ConfigError("grid needs at least 16 nodes");
    if (!(band_hi > band_lo) || !(band_lo > 0.0))
        throw ConfigError("frequency band needs 0 < lo < hi");
    if (band_count < 1) throw ConfigError("frequency band needs at least one sample");
    if (!(cutoff_factor > 1.0)) throw ConfigError("cutoff-factor must exceed 1");
    if (cutoff_nodes < 3 || cutoff_nodes % 2 == 0)
        throw ConfigError("cutoff-nodes must be odd and >= 3");
    if (!(eps_reg > 0.0) || !(solver_tol > 0.0))
        throw ConfigError("tolerances must be positive");
    if (!(constants.c > 0.0 && constants.eps0 > 0.0 && constants.mu0 > 0.0 &&
          constants.hbar > 0.0))
        throw ConfigError("physical constants must be positive");
    model.validate();
    for (const Layer& l : model.layers)
        if (l.z_min < z_min || l.z_max > z_max)
            throw ConfigError("layer '" + l.name + "' extends beyond the grid extent");
    for (const std::string& a : analyses) {
        const auto& known = known_suites();
        if (std::find(known.begin(), known.end(), a) == known.end())
            throw ConfigError("unknown analysis suite '" + a + "'");
    }
}

std::shared_ptr<const SpatialGrid> ScenarioConfig::make_grid() const {
    return SpatialGrid::uniform(z_min, z_max, nodes);
}

std::vector<double> ScenarioConfig::band_frequencies() const {
    std::vector<double> out(static_cast<std::size_t>(band_count));
    for (int i = 0; i < band_count; ++i)
        out[static_cast<std::size_t>(i)] =
            band_count > 1 ? band_lo + (band_hi - band_lo) * i / (band_count - 1)
                           : 0.5 * (band_lo + band_hi);
    return out;
}

double ScenarioConfig::top_scale() const {
    const double res = model.max_resonance();
    return res > 0.0 ? res : band_hi;
}

FrequencyGrid ScenarioConfig::commutator_grid() const {
    return FrequencyGrid::simpson(cutoff_factor * top_scale(), cutoff_nodes);
}

PoleScanConfig ScenarioConfig::scan_region() const {
    return scan_configured ? scan : default_scan_region(model);
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace ampqed
