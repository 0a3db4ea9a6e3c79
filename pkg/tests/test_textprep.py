import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from landuse.errors import InputError
from landuse.ingest import RawPost
from landuse.textprep import (
    CleanPost,
    Lexicon,
    ReplacementDictionary,
    SpellResources,
    clean_tokens,
    expand_abbreviations,
    lcs_ratio,
    lemmatize_and_tag,
    levenshtein,
    load_dictionary,
    load_lexicon,
    preprocess,
    process_hashtags_and_mentions,
    remove_stopwords,
    spell_correct,
    strip_noise,
)

from oracles import lcs_ratio_brute


def raw(text, pid="p1"):
    return RawPost(pid, "u", text, "2019-04-01T10:00:00Z", -16.4, -71.5)


def tagged(doc):
    return " ".join(f"{l}/{t}" for l, t in zip(doc.lemmas, doc.pos_tags))


# -- noise


def test_strip_url():
    text = "Un dia cualquiera en Cevicheria Karloncho Oficia https://t.co/f9kdEEwdMx"
    assert strip_noise(text) == "Un dia cualquiera en Cevicheria Karloncho Oficia"


def test_strip_nothing():
    assert strip_noise("hola") == "hola"


def test_strip_tags_and_emoji():
    assert strip_noise("<b>hola</b> 😀 mundo") == "hola mundo"


def test_strip_keeps_markers_drops_other_symbols():
    assert strip_noise("¡Hola, @ana! #Lima & www.x.com/a t.co/zz") == "Hola @ana #Lima"
    assert strip_noise("I'm at") == "Im at"


# -- hashtags and mentions


def test_mention_becomes_en():
    assert (
        process_hashtags_and_mentions("(@ Residencial Parque Central in Lima)")
        == "en residencial parque central in lima"
    )


def test_hashtags_kept_as_words():
    assert process_hashtags_and_mentions("#friends #meeting") == "friends meeting"


def test_no_markers():
    assert process_hashtags_and_mentions("sin cambios") == "sin cambios"


def test_mention_prefixing_handle():
    assert process_hashtags_and_mentions("@mallplazaperu") == "en mallplazaperu"


# -- abbreviations


def test_expand_restaurant():
    d = ReplacementDictionary.from_pairs([("cevicheria", "restaurante")])
    assert expand_abbreviations(["cevicheria", "karloncho"], d) == ["restaurante", "karloncho"]


def test_expand_accented():
    d = ReplacementDictionary.from_pairs([("mami", "mamá")])
    assert expand_abbreviations(["mami"], d) == ["mamá"]


def test_expand_empty_dictionary():
    assert expand_abbreviations(["a", "b"], ReplacementDictionary({})) == ["a", "b"]


def test_expand_longest_match_first():
    d = ReplacementDictionary.from_pairs(
        [("fin", "final"), ("fin de semana", "weekend"), ("mall", "centro comercial")]
    )
    assert expand_abbreviations("un fin de semana en el mall".split(), d) == [
        "un", "weekend", "en", "el", "centro", "comercial",
    ]


def test_dictionary_rejects_identity_entry():
    with pytest.raises(ValueError):
        ReplacementDictionary.from_pairs([("casa", "casa")])


# -- LCS


@pytest.mark.parametrize(
    "cand, word, expected",
    [("zapato", "sapato", 5 / 6), ("sato", "sapato", 0.5), ("canastita", "casiita", 3 / 7), ("abc", "abc", 1.0)],
)
def test_lcs_examples(cand, word, expected):
    assert lcs_ratio(cand, word) == pytest.approx(expected, abs=1e-12)


def test_lcs_normalizes_spaces_hyphens_and_case():
    assert lcs_ratio("Club Militar", "ClubMilita") == 1.0
    assert lcs_ratio("Club-militar", "ClubMilita") == 1.0


def test_lcs_empty_raises():
    with pytest.raises(ValueError):
        lcs_ratio("", "abc")
    with pytest.raises(ValueError):
        lcs_ratio("abc", " - ")


words = st.text(alphabet="abcdeñáAB", min_size=1, max_size=10)


@given(words, words)
def test_lcs_bounded_and_matches_oracle(a, b):
    r = lcs_ratio(a, b)
    assert 0.0 <= r <= 1.0
    assert r == lcs_ratio_brute(a, b)


@given(words)
def test_lcs_self_is_one(a):
    assert lcs_ratio(a, a) == 1.0


@given(words, words)
def test_lcs_case_invariant(a, b):
    assert lcs_ratio(a.upper(), b) == lcs_ratio(a, b.upper()) == lcs_ratio(a, b)


def test_levenshtein():
    assert levenshtein("casa", "casas") == 1
    assert levenshtein("parke", "parque") == 2
    assert levenshtein("", "abc") == 3
    assert levenshtein("abcdef", "uvwxyz", limit=2) == 3


# -- spell correction

SAPATO = ("apasto", "zapato", "patoso", "topatopa", "sato", "pato")


def spell(suggestions=None, vocabulary=()):
    return SpellResources(frozenset(vocabulary), dict(suggestions or {}))


def test_sapato_becomes_zapato():
    assert spell_correct("sapato", spell({"sapato": SAPATO})) == "zapato"


def test_munays_deleted():
    assert spell_correct("munays", spell({"munays": ("ayunas",)})) is None


def test_known_word_kept():
    assert spell_correct("casa", spell(vocabulary={"casa"})) == "casa"


def test_tie_keeps_first_candidate():
    res = spell({"clubmilita": ("club militar", "club-militar", "militarizar")})
    assert spell_correct("clubmilita", res) == "club militar"


def test_threshold_is_inclusive():
    # 5/7 = 0.714 passes 0.71, and fails a 0.72 threshold
    assert lcs_ratio("casinita", "casiita") < 0.71
    res = SpellResources(frozenset(), {"abcdefg": ("abcdexx",)}, acceptance_threshold=5 / 7)
    assert spell_correct("abcdefg", res) == "abcdexx"
    res = SpellResources(frozenset(), {"abcdefg": ("abcdexx",)}, acceptance_threshold=0.72)
    assert spell_correct("abcdefg", res) is None


def test_fallback_suggestions_from_vocabulary():
    res = spell(vocabulary={"parque", "plaza", "casa"})
    assert res.candidates("parqe") == ("parque",)
    assert spell_correct("parqe", res) == "parque"
    assert spell_correct("zzzzzz", res) is None


@given(st.text(alphabet="abcz", min_size=1, max_size=6), st.lists(st.text(alphabet="abcz", min_size=1, max_size=6), max_size=5))
def test_spell_never_invents(token, cands):
    res = spell({token: tuple(cands)})
    out = spell_correct(token, res)
    assert out is None or out == token or out in cands


def test_bad_threshold():
    with pytest.raises(ValueError):
        SpellResources(frozenset(), {}, acceptance_threshold=0.0)


# -- stopwords


def test_stopwords_keep_en():
    assert remove_stopwords(["estoy", "en", "casa"], {"estoy", "en"}) == ["en", "casa"]


def test_stopwords_empty():
    assert remove_stopwords([], {"la"}) == []


def test_stopwords_keep_de():
    assert remove_stopwords(["la", "de", "la"], {"la", "de"}) == ["de"]


@given(st.lists(st.sampled_from(["en", "de", "la", "el", "casa", "x"]), max_size=15), st.sets(st.sampled_from(["en", "de", "la", "el", "x"])))
def test_stopword_properties(tokens, stoplist):
    out = remove_stopwords(tokens, stoplist)
    assert len(out) <= len(tokens)
    assert out.count("en") == tokens.count("en")
    assert out.count("de") == tokens.count("de")


# -- lemmatization


def test_lemmatize_bundled(resources):
    lemmas, tags = lemmatize_and_tag(["desayuno", "amigos", "reunión"], resources.lexicon)
    assert lemmas == ["desayuno", "amigo", "reunión"]
    assert tags == ["NC", "AQ", "NC"]
    assert lemmatize_and_tag(["en"], resources.lexicon) == (["en"], ["SP"])


def test_unknown_word_is_common_noun():
    assert lemmatize_and_tag(["zzqq"], Lexicon({})) == (["zzqq"], ["NC"])


def test_multiword_entry_joined():
    lex = Lexicon.from_triples([("plaza de armas", "plaza de armas", "np"), ("plaza", "plaza", "NC")])
    assert lex.entries[("plaza", "de", "armas")] == ("plaza_de_armas", "NP")
    assert lemmatize_and_tag("en plaza de armas".split(), lex) == (
        ["en", "plaza_de_armas"],
        ["NC", "NP"],
    )


def test_lexicon_rejects_bad_tag():
    with pytest.raises(ValueError):
        Lexicon({("a",): ("a", "nc")})


@given(st.lists(st.sampled_from(["plaza", "de", "armas", "en", "x", "casa"]), max_size=20))
def test_lemma_and_tag_lengths_match(tokens):
    lex = Lexicon.from_triples([("plaza de armas", "plaza de armas", "NP"), ("casa", "casa", "NC"), ("en", "en", "SP")])
    lemmas, tags = lemmatize_and_tag(tokens, lex)
    assert len(lemmas) == len(tags) <= len(tokens)


# -- whole pipeline on the bundled resources


def test_mall_row(resources):
    doc = preprocess(
        raw("I'm at Mallplaza Bellavista -  @mallplazaperu in Bellavista, Callao https://t.co/brtyxSe8CY"),
        resources,
    )
    assert tagged(doc) == (
        "estar/VMI en/SP centro/NC comercial/AQ bellavista/NP en/SP "
        "centro/NC comercial/AQ en/SP bellavista_callao/NP"
    )


def test_university_row(resources):
    doc = preprocess(
        raw("work breakfast ! #friends  #meeting en Universidad Jorge Tadeo Lozano https://t.co/sNYJhxG6cw"),
        resources,
    )
    assert tagged(doc) == (
        "trabajo/NC desayuno/NC amigo/AQ reunión/NC en/SP universidad/NC jorge_tadeo_lozano/NP"
    )


def test_restaurant_row(resources):
    doc = preprocess(raw("Un dia cualquiera en Cevicheria Karloncho Oficia https://t.co/f9kdEEwdMx"), resources)
    assert "restaurante" in doc.tokens
    assert "en/SP restaurante/NC" in tagged(doc)
    assert tagged(doc) == "día/NC cualquiera/PI en/SP restaurante/NC karloncho/NP oficiar/VMI"


def test_residential_row(resources):
    text = "He venido a que mami me atiborre de comidaaaaaa (@Residencial Parque Central in Lima) https://t.co/dCCBbEgvZm"
    tokens = clean_tokens(text, resources)
    assert tokens[:2] == ["venido", "mamá"]
    assert "en" in tokens and "lima" in tokens


def test_golden_crafted_post(resources):
    # traced stage by stage:
    #   noise:     tags, entity, comma, emoji and URL gone; "#depa", "@Cevicheria" kept
    #   markers:   "depa", "en cevicheria", lowercased
    #   dictionary: depa -> departamento, mami -> mamá, cevicheria -> restaurante, q -> que
    #   spelling:  sapato -> zapato (5/6), xqzt has no candidate and is deleted
    #   stopwords: el, mi, que dropped; en and de kept
    #   lexicon:   estoy -> estar/VMI, karloncho/NP, rico/AQ, departamento unknown -> NC
    text = "<p>Estoy en el #depa de mi mami &amp; @Cevicheria Karloncho, q rico!! 😀 https://t.co/abc sapato xqzt</p>"
    doc = preprocess(raw(text, "g1"), resources)
    assert doc == CleanPost(
        id="g1",
        tokens=("estoy", "en", "departamento", "de", "mamá", "en", "restaurante", "karloncho", "rico", "zapato"),
        lemmas=("estar", "en", "departamento", "de", "mamá", "en", "restaurante", "karloncho", "rico", "zapato"),
        pos_tags=("VMI", "SP", "NC", "SP", "NC", "SP", "NC", "NP", "AQ", "NC"),
        point=(-16.4, -71.5),
    )


def test_all_tokens_deleted_gives_empty_post(resources):
    doc = preprocess(raw("xqzt 😀 https://t.co/x"), resources)
    assert doc.tokens == doc.lemmas == doc.pos_tags == ()
    assert doc.point == (-16.4, -71.5)


def test_translate_hook_runs_after_noise_removal(resources):
    from dataclasses import replace

    seen = []

    def translate(text):
        seen.append(text)
        return text.replace("house", "casa")

    doc = preprocess(raw("my house https://t.co/x"), replace(resources, translate=translate))
    assert seen == ["my house"]
    assert "casa" in doc.tokens


@given(st.text(max_size=60))
def test_output_is_lowercase_without_punctuation(resources, text):
    doc = preprocess(raw(text), resources)
    for tok in doc.tokens:
        assert tok == tok.lower()
        assert all(ch == "_" or unicodedata.category(ch)[0] in "LNM" for ch in tok), tok
    assert len(doc.tokens) == len(doc.lemmas) == len(doc.pos_tags)


# -- resource files


def test_malformed_tsv_names_line(tmp_path):
    f = tmp_path / "abbr.tsv"
    f.write_text("# comment\nq\tque\nbroken line without tab\n", encoding="utf-8")
    with pytest.raises(InputError) as err:
        load_dictionary(f)
    assert err.value.line == 3


def test_lexicon_file(tmp_path):
    f = tmp_path / "lex.tsv"
    f.write_text("plaza de armas\tplaza de armas\tNP\ncasas\tcasa\tNC\n", encoding="utf-8")
    lex = load_lexicon(f)
    assert lex.entries[("casas",)] == ("casa", "NC")
    assert lex.entries[("plaza", "de", "armas")] == ("plaza_de_armas", "NP")


def test_missing_resource_file():
    with pytest.raises(InputError, match="nowhere"):
        load_dictionary("/nowhere/abbr.tsv")
