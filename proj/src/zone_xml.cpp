#include "trackrepair/zone_xml.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace trackrepair {

namespace {

struct Tag {
    std::string name;
    std::map<std::string, std::string> attributes;
    bool closing = false;      // </Name>
    bool selfClosing = false;  // <Name ... />
    int line = 0;
};

// Minimal tokenizer for the zone dialect: tags with quoted attributes,
// comments and declarations skipped. No entities, namespaces or CDATA.
class TagReader {
public:
    explicit TagReader(const std::string& text) : text_(text) {}

    bool next(Tag& tag) {
        for (;;) {
            skipUntilTag();
            if (pos_ >= text_.size()) {
                return false;
            }
            if (startsWith("<!--")) {
                skipPast("-->", "unterminated comment");
                continue;
            }
            if (startsWith("<?")) {
                skipPast("?>", "unterminated declaration");
                continue;
            }
            if (startsWith("<!")) {
                skipPast(">", "unterminated '<!' section");
                continue;
            }
            readTag(tag);
            return true;
        }
    }

private:
    bool startsWith(const std::string& prefix) const {
        return text_.compare(pos_, prefix.size(), prefix) == 0;
    }

    void advance(std::size_t count) {
        for (std::size_t i = 0; i < count && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
            }
        }
    }

    void skipUntilTag() {
        while (pos_ < text_.size() && text_[pos_] != '<') {
            advance(1);
        }
    }

    void skipPast(const std::string& marker, const std::string& errorMessage) {
        const auto end = text_.find(marker, pos_);
        if (end == std::string::npos) {
            throw ParseError(line_, errorMessage);
        }
        advance(end + marker.size() - pos_);
    }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance(1);
        }
    }

    std::string readName() {
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '-' || text_[pos_] == '.')) {
            advance(1);
        }
        if (pos_ == start) {
            throw ParseError(line_, "expected a name");
        }
        return text_.substr(start, pos_ - start);
    }

    void readTag(Tag& tag) {
        tag = Tag{};
        tag.line = line_;
        advance(1);  // '<'
        if (pos_ < text_.size() && text_[pos_] == '/') {
            tag.closing = true;
            advance(1);
        }
        skipSpace();
        tag.name = readName();
        for (;;) {
            skipSpace();
            if (pos_ >= text_.size()) {
                throw ParseError(tag.line, "unterminated tag <" + tag.name + ">");
            }
            if (text_[pos_] == '>') {
                advance(1);
                return;
            }
            if (text_[pos_] == '/') {
                advance(1);
                skipSpace();
                if (pos_ >= text_.size() || text_[pos_] != '>') {
                    throw ParseError(line_, "expected '>' after '/'");
                }
                advance(1);
                tag.selfClosing = true;
                return;
            }
            const std::string key = readName();
            skipSpace();
            if (pos_ >= text_.size() || text_[pos_] != '=') {
                throw ParseError(line_, "expected '=' after attribute '" + key + "'");
            }
            advance(1);
            skipSpace();
            if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
                throw ParseError(line_, "expected a quoted value for attribute '" + key + "'");
            }
            const char quote = text_[pos_];
            advance(1);
            const auto valueStart = pos_;
            while (pos_ < text_.size() && text_[pos_] != quote) {
                advance(1);
            }
            if (pos_ >= text_.size()) {
                throw ParseError(line_, "unterminated value for attribute '" + key + "'");
            }
            tag.attributes[key] = text_.substr(valueStart, pos_ - valueStart);
            advance(1);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

const std::string& requireAttribute(const Tag& tag, const std::string& key) {
    const auto it = tag.attributes.find(key);
    if (it == tag.attributes.end()) {
        throw ParseError(tag.line, "<" + tag.name + "> is missing attribute '" + key + "'");
    }
    return it->second;
}

double parseNumber(const Tag& tag, const std::string& key) {
    const std::string& value = requireAttribute(tag, key);
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ParseError(tag.line, "attribute '" + key + "' is not a number: '" + value + "'");
    }
}

struct KindMapping {
    const char* property;
    ZoneKind kind;
};

constexpr KindMapping kKindMappings[] = {
    {"In_out_zone:Entry", ZoneKind::Entry},
    {"In_out_zone:Exit", ZoneKind::Exit},
    {"In_out_zone:InOut", ZoneKind::InOut},
    {"Lost_found_zone:Lost", ZoneKind::Lost},
    {"Lost_found_zone:Found", ZoneKind::Found},
    {"Lost_found_zone:Yes", ZoneKind::LostFound},
};

ZoneKind kindFromProperty(const std::string& property, int line) {
    for (const auto& mapping : kKindMappings) {
        if (property == mapping.property) {
            return mapping.kind;
        }
    }
    throw ParseError(line, "unsupported zone kind property '" + property + "'");
}

const char* propertyFromKind(ZoneKind kind) {
    for (const auto& mapping : kKindMappings) {
        if (mapping.kind == kind) {
            return mapping.property;
        }
    }
    return kKindMappings[0].property;
}

Zone parseZoneElement(const Tag& zoneTag, TagReader& reader) {
    Zone zone;
    try {
        zone.ident = static_cast<int>(parseNumber(zoneTag, "ident"));
    } catch (const ParseError&) {
        throw;
    }
    zone.name = requireAttribute(zoneTag, "name");
    zone.planeName = requireAttribute(zoneTag, "plane_name");

    bool haveKind = false;
    Tag tag;
    while (reader.next(tag)) {
        if (tag.closing && tag.name == "Zone") {
            if (!haveKind) {
                throw ParseError(zoneTag.line, "zone '" + zone.name + "' has no kind property");
            }
            if (zone.outline.size() < 3) {
                throw GeometryError("zone '" + zone.name + "' has fewer than 3 outline points");
            }
            zone.validate();
            return zone;
        }
        if (tag.closing) {
            continue;  // </Properties_list>, </Outline_list>
        }
        if (tag.name == "Property") {
            zone.kind = kindFromProperty(requireAttribute(tag, "name"), tag.line);
            haveKind = true;
        } else if (tag.name == "Point") {
            GroundPoint p;
            p.x = parseNumber(tag, "x");
            p.y = parseNumber(tag, "y");
            p.z = parseNumber(tag, "z");
            zone.outline.push_back(p);
        } else if (tag.name == "Properties_list" || tag.name == "Outline_list") {
            // containers, nothing to record
        } else {
            throw ParseError(tag.line, "unexpected element <" + tag.name + "> inside <Zone>");
        }
    }
    throw ParseError(zoneTag.line, "unterminated <Zone> element");
}

std::string formatCoordinate(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

}  // namespace

std::vector<Zone> parseZoneFile(const std::string& text) {
    TagReader reader(text);
    std::vector<Zone> zones;
    Tag tag;
    while (reader.next(tag)) {
        if (!tag.closing && tag.name == "Zone") {
            if (tag.selfClosing) {
                throw ParseError(tag.line, "<Zone/> element has no outline");
            }
            zones.push_back(parseZoneElement(tag, reader));
        }
    }
    return zones;
}

std::string serializeZones(const std::vector<Zone>& zones) {
    std::ostringstream out;
    out << "<Zone_list>\n";
    for (const auto& zone : zones) {
        out << "  <Zone ident = \"" << zone.ident << "\" name = \"" << zone.name
            << "\" plane_name = \"" << zone.planeName << "\">\n";
        out << "    <Properties_list>\n";
        out << "      <Property name = \"" << propertyFromKind(zone.kind) << "\"/>\n";
        out << "    </Properties_list>\n";
        out << "    <Outline_list>\n";
        for (const auto& p : zone.outline) {
            out << "      <Point x=\"" << formatCoordinate(p.x) << "\" y=\"" << formatCoordinate(p.y)
                << "\" z=\"" << formatCoordinate(p.z) << "\"/>\n";
        }
        out << "    </Outline_list>\n";
        out << "  </Zone>\n";
    }
    out << "</Zone_list>\n";
    return out.str();
}

std::vector<Zone> loadZoneFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open zone file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseZoneFile(buffer.str());
}

void saveZoneFile(const std::string& path, const std::vector<Zone>& zones) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write zone file '" + path + "'");
    }
    out << serializeZones(zones);
}

}  // namespace trackrepair
