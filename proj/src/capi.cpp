#include "artin_relhyp.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "artin/groupfile.hpp"
#include "artin/report.hpp"

struct arh_group {
  artin::GroupSpec spec;
};

struct arh_ball {
  artin::ConedBall ball;
};

namespace {

using namespace artin;

thread_local std::string last_error;

arh_status code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return ARH_PARSE;
    case ErrorKind::argument: return ARH_ARGUMENT;
    case ErrorKind::scope: return ARH_SCOPE;
    case ErrorKind::resource: return ARH_RESOURCE;
    case ErrorKind::internal: return ARH_INTERNAL;
  }
  return ARH_INTERNAL;
}

template <class F>
arh_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return code(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ARH_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ARH_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::argument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

arh_options defaults() {
  arh_options o;
  arh_options_default(&o);
  return o;
}

CommandConfig config(const arh_options* o) {
  arh_options d = o ? *o : defaults();
  if (d.radius < 0 || d.slack < 0 || d.search_radius < 0)
    throw Error(ErrorKind::argument, "radius, slack and search radius must be nonnegative");
  CommandConfig c;
  c.radius = d.radius;
  c.slack = d.slack;
  c.seed = d.seed;
  c.geodesic_cap = d.geodesic_cap;
  c.quadrilateral_cap = d.quadrilateral_cap;
  c.mode = d.mode == ARH_CLAIM ? ScanMode::claim : ScanMode::vertex;
  c.threads = d.threads;
  c.strong = d.strong;
  c.allow_small_labels = d.allow_small_labels;
  c.allow_extra_large = d.allow_extra_large;
  c.per_pair = d.per_pair;
  c.timing = d.timing;
  c.samples = d.samples;
  c.search_radius = d.search_radius;
  return c;
}

std::string render(const Records& r, const arh_options* o) {
  return (o ? o->format : ARH_TEXT) == ARH_MACHINE ? render_machine(r) : render_text(r);
}

Word word_arg(const arh_group* g, const char* w, const char* what) {
  require(w, what);
  return parse_word(w, g->spec.rank());
}

arh_status emit(const Records& r, const arh_options* o, char** out, bool ok = true) {
  require(out, "out");
  *out = dup(render(r, o));
  return ok ? ARH_OK : ARH_ASSERTION;
}

bool last_flag(const Records& r, const char* key) {
  const std::string* v = r.back().get(key);
  return !v || *v == "yes";
}

}  // namespace

extern "C" {

void arh_options_default(arh_options* o) {
  if (!o) return;
  o->radius = 3;
  o->slack = 1;
  o->seed = 1;
  o->geodesic_cap = 64;
  o->quadrilateral_cap = 50000;
  o->mode = ARH_VERTEX;
  o->threads = 0;
  o->strong = 0;
  o->allow_small_labels = 0;
  o->allow_extra_large = 0;
  o->per_pair = 0;
  o->timing = 1;
  o->samples = 20;
  o->search_radius = 4;
  o->format = ARH_TEXT;
}

const char* arh_version(void) { return "0.1.0"; }
const char* arh_last_error(void) { return last_error.c_str(); }
void arh_string_free(char* s) { std::free(s); }

arh_status arh_group_load(const char* path, arh_group** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new arh_group{load_group_file(path)};
    return ARH_OK;
  });
}

arh_status arh_group_parse(const char* text, arh_group** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new arh_group{parse_group_file(text)};
    return ARH_OK;
  });
}

arh_status arh_group_uniform(int n, int m, arh_group** out) {
  return guard([&] {
    require(out, "out");
    if (n < 1 || n > 64) throw Error(ErrorKind::argument, "rank must be in 1..64");
    *out = new arh_group{m == 0 ? GroupSpec(n) : GroupSpec::uniform(n, m)};
    return ARH_OK;
  });
}

void arh_group_free(arh_group* g) { delete g; }

int arh_group_rank(const arh_group* g) { return g ? g->spec.rank() : -1; }

int arh_group_label(const arh_group* g, int i, int j) {
  if (!g || i < 1 || j < 1 || i > g->spec.rank() || j > g->spec.rank() || i == j) return -1;
  Label l = g->spec.label(i, j);
  return l.is_infinite() ? 0 : l.value();
}

arh_status arh_info(const arh_group* g, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_info(g->spec), o, out);
  });
}

arh_status arh_relator(const arh_group* g, int i, int j, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_relator(g->spec, i, j), o, out);
  });
}

arh_status arh_nf(const arh_group* g, int i, int j, const char* word, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_nf(g->spec, i, j, word_arg(g, word, "word")), o, out);
  });
}

arh_status arh_minsyll(const arh_group* g, int i, int j, const char* word, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_minsyll(g->spec, i, j, word_arg(g, word, "word")), o, out);
  });
}

arh_status arh_wp(const arh_group* g, const char* word, const char* other, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    std::optional<Word> w2;
    if (other) w2 = word_arg(g, other, "other");
    auto r = cmd_wp(g->spec, word_arg(g, word, "word"), w2, config(o));
    if (*r.back().get("verdict") == "stalled") {
      emit(r, o, out);
      last_error = "word problem solver stalled";
      return ARH_SCOPE;
    }
    return emit(r, o, out);
  });
}

arh_status arh_reduce(const arh_group* g, const char* word, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_reduce(g->spec, word_arg(g, word, "word"), config(o)), o, out);
  });
}

arh_status arh_intersect(const arh_group* g, int i, int j, int s, int t, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    auto r = cmd_intersect(g->spec, i, j, s, t, config(o));
    return emit(r, o, out, last_flag(r, "ok"));
  });
}

arh_status arh_ball_build(const arh_group* g, const arh_options* o, arh_ball** out) {
  return guard([&] {
    require(g, "group");
    require(out, "out");
    auto c = config(o);
    BallOptions bo;
    bo.allow_small_labels = c.allow_small_labels;
    *out = new arh_ball{build_ball(g->spec, c.radius, c.slack, bo)};
    return ARH_OK;
  });
}

void arh_ball_free(arh_ball* b) { delete b; }

arh_status arh_ball_summary(const arh_ball* b, const arh_options* o, char** out) {
  return guard([&] {
    require(b, "ball");
    return emit(ball_records(b->ball), o, out);
  });
}

arh_status arh_ball_export(const arh_ball* b, const arh_options*, char** out) {
  return guard([&] {
    require(b, "ball");
    require(out, "out");
    *out = dup(export_ball(b->ball));
    return ARH_OK;
  });
}

arh_status arh_ball_find(const arh_ball* b, const char* word, uint32_t* vertex) {
  return guard([&] {
    require(b, "ball");
    require(word, "word");
    require(vertex, "vertex");
    auto v = b->ball.find(parse_word(word, b->ball.spec().rank()));
    if (!v) throw Error(ErrorKind::argument, "word lies outside the ball");
    *vertex = *v;
    return ARH_OK;
  });
}

arh_status arh_ball_distance(const arh_ball* b, uint32_t u, uint32_t v, int* distance) {
  return guard([&] {
    require(b, "ball");
    require(distance, "distance");
    if (u >= b->ball.group_count() || v >= b->ball.group_count())
      throw Error(ErrorKind::argument, "vertex index out of range");
    *distance = distance_X(b->ball, u, v);
    return ARH_OK;
  });
}

arh_status arh_dist(const arh_group* g, const char* from, const char* to, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_dist(g->spec, word_arg(g, from, "from"), word_arg(g, to, "to"), config(o)), o, out);
  });
}

arh_status arh_geo(const arh_group* g, const char* from, const char* to, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    return emit(cmd_geo(g->spec, word_arg(g, from, "from"), word_arg(g, to, "to"), config(o)), o, out);
  });
}

arh_status arh_pipeline(const arh_group* g, const char* from, const char* to, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    std::optional<std::pair<Word, Word>> ends;
    if (from || to) ends.emplace(word_arg(g, from, "from"), word_arg(g, to, "to"));
    auto r = cmd_pipeline(g->spec, ends, config(o));
    return emit(r, o, out, last_flag(r, "ok"));
  });
}

arh_status arh_bigons(const arh_group* g, const arh_options* o, char** out) {
  return guard([&] {
    require(g, "group");
    auto r = cmd_bigons(g->spec, config(o));
    bool ok = true;
    for (const auto& rec : r)
      if (rec.type == "bigons") ok = *rec.get("within_bound") == "yes";
    return emit(r, o, out, ok);
  });
}

arh_status arh_delta(const arh_group* const* groups, const char* const* names, size_t count, const arh_options* o,
                     char** out) {
  return guard([&] {
    require(groups, "groups");
    std::vector<std::pair<std::string, GroupSpec>> specs;
    for (size_t k = 0; k < count; ++k) {
      require(groups[k], "group");
      std::string name = names && names[k] ? names[k] : "group" + std::to_string(k + 1);
      specs.emplace_back(name, groups[k]->spec);
    }
    auto r = cmd_delta(specs, config(o));
    return emit(r, o, out, last_flag(r, "within_bound"));
  });
}

arh_status arh_accept(const arh_group* g, const int* only, size_t only_count, const arh_options* o,
                      arh_progress progress, void* user, char** out) {
  return guard([&] {
    require(g, "group");
    require(out, "out");
    auto c = config(o);
    AcceptanceConfig ac;
    ac.spec = g->spec;
    ac.seed = c.seed;
    ac.radius = c.radius;
    ac.slack = c.slack;
    ac.geodesic_cap = c.geodesic_cap;
    ac.quadrilateral_cap = c.quadrilateral_cap;
    ac.threads = c.threads;
    for (size_t k = 0; k < only_count; ++k) {
      if (!only || only[k] < 1 || only[k] > 8) throw Error(ErrorKind::argument, "criteria are numbered 1..8");
      ac.only.push_back(only[k]);
    }
    auto rep = run_acceptance(ac, [&](const CriterionResult& r) {
      if (progress) progress(render({accept_record(r, c.timing)}, o).c_str(), user);
    });
    *out = dup(render(accept_records(rep, c.timing), o));
    if (rep.resource_hit()) {
      last_error = "vertex cap exceeded; report is partial";
      return ARH_RESOURCE;
    }
    return rep.ok() ? ARH_OK : ARH_ASSERTION;
  });
}

}  // extern "C"
