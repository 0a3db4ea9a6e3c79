"""Seeded generator for the bundled synthetic training corpus.

The real labeled corpus is private, so the package ships a small stand-in
with the same shape: Spanish check-in style posts for the nine land-use
subcategories plus off-topic chatter labeled NonClassified. Keywords are
drawn in several inflected forms so that surface features fragment where
lemmas do not.

``python -m landuse.synth OUT_DIR`` rewrites ``corpus_posts.jsonl`` and
``corpus_labels.jsonl``.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .ingest import RawPost, write_jsonl
from .taxonomy import Sub

DEFAULT_SEED = 20190401

# lemma:TAG form form ...  (several lines may share a lemma)
_KEYWORDS = {
    Sub.COMMERCIAL: """
        compra:NC compra compras
        comprar:VMI compré compramos compraron
        comprar:VMG comprando
        tienda:NC tienda tiendas
        ropa:NC ropa
        zapato:NC zapato zapatos
        oferta:NC oferta ofertas
        hotel:NC hotel hoteles
        habitación:NC habitación habitaciones
        hospedaje:NC hospedaje hospedajes
        estacionamiento:NC estacionamiento estacionamientos
        precio:NC precio precios
        regalo:NC regalo regalos
        vender:VMI vende venden
        vender:VMG vendiendo
        barato:AQ barato barata baratos baratas
        mercado:NC mercado mercados
    """,
    Sub.COMMERCIAL_RESTAURANT: """
        restaurante:NC restaurante restaurantes
        comer:VMI comemos comí comieron
        comer:VMG comiendo
        almorzar:VMI almorzamos almorcé
        almorzar:VMG almorzando
        almuerzo:NC almuerzo almuerzos
        cenar:VMI cenamos cené
        cenar:VMG cenando
        cena:NC cena cenas
        ceviche:NC ceviche ceviches
        comida:NC comida comidas
        rico:AQ rico rica ricos ricas
        plato:NC plato platos
        picantería:NC picantería picanterías
        cerveza:NC cerveza cervezas
        postre:NC postre postres
    """,
    Sub.COMMERCIAL_SERVICE: """
        peluquería:NC peluquería peluquerías
        corte:NC corte cortes
        gimnasio:NC gimnasio gimnasios
        entrenar:VMI entrenamos entrené
        entrenar:VMG entrenando
        lavandería:NC lavandería lavanderías
        cine:NC cine cines
        spa:NC spa
        masaje:NC masaje masajes
        bar:NC bar bares
        discoteca:NC discoteca discotecas
        bailar:VMI bailamos bailé
        bailar:VMG bailando
        banco:NC banco bancos
        trago:NC trago tragos
    """,
    Sub.INSTITUTIONAL: """
        iglesia:NC iglesia iglesias
        misa:NC misa misas
        rezar:VMI rezamos recé
        rezar:VMG rezando
        catedral:NC catedral catedrales
        convento:NC convento conventos
        capilla:NC capilla capillas
        hospital:NC hospital hospitales
        clínica:NC clínica clínicas
        médico:NC médico médica médicos
        cita:NC cita citas
        municipalidad:NC municipalidad municipalidades
        trámite:NC trámite trámites
        santo:NC santo santa santos
        dominical:AQ dominical dominicales
    """,
    Sub.INSTITUTIONAL_EDUCATION: """
        universidad:NC universidad universidades
        clase:NC clase clases
        examen:NC examen exámenes
        estudiar:VMI estudiamos estudié
        estudiar:VMG estudiando
        colegio:NC colegio colegios
        profesor:NC profesor profesora profesores
        tarea:NC tarea tareas
        biblioteca:NC biblioteca bibliotecas
        instituto:NC instituto institutos
        alumno:NC alumno alumna alumnos
        facultad:NC facultad facultades
        curso:NC curso cursos
    """,
    Sub.INSTITUTIONAL_CULTURAL: """
        museo:NC museo museos
        exposición:NC exposición exposiciones
        concierto:NC concierto conciertos
        arte:NC arte artes
        teatro:NC teatro teatros
        obra:NC obra obras
        cultural:AQ cultural culturales
        música:NC música
        cantar:VMI cantamos canté
        cantar:VMG cantando
        inauguración:NC inauguración inauguraciones
        momia:NC momia momias
        artista:NC artista artistas
        danza:NC danza danzas
    """,
    Sub.INDUSTRIAL_OFFICES: """
        oficina:NC oficina oficinas
        trabajo:NC trabajo trabajos
        trabajar:VMI trabajamos trabajé
        trabajar:VMG trabajando
        reunión:NC reunión reuniones
        empresa:NC empresa empresas
        jefe:NC jefe jefa jefes
        proyecto:NC proyecto proyectos
        fábrica:NC fábrica fábricas
        salir:VMG saliendo
        colega:NC colega colegas
        informe:NC informe informes
        edificio:NC edificio edificios
    """,
    Sub.RESIDENTIAL: """
        casa:NC casa casas
        hogar:NC hogar hogares
        familia:NC familia familias
        dormir:VMG durmiendo
        descansar:VMG descansando
        descansar:VMI descansamos descansé
        película:NC película películas
        mamá:NC mamá
        papá:NC papá
        cocinar:VMG cocinando
        cocinar:VMI cocinamos cociné
        departamento:NC departamento departamentos
        dulce:AQ dulce dulces
        vecino:NC vecino vecina vecinos
        residencial:NC residencial residenciales
    """,
    Sub.UNBUILT_LAND: """
        plaza:NC plaza plazas
        parque:NC parque parques
        río:NC río ríos
        campiña:NC campiña campiñas
        paseo:NC paseo paseos
        caminar:VMI caminamos caminé
        caminar:VMG caminando
        puente:NC puente puentes
        mirador:NC mirador miradores
        atardecer:NC atardecer atardeceres
        paisaje:NC paisaje paisajes
        volcán:NC volcán volcanes
        árbol:NC árbol árboles
        terreno:NC terreno terrenos
    """,
}

# Venue names as typed in posts; the lexicon knows them as proper nouns.
_PLACES = {
    Sub.COMMERCIAL: ["Saga Falabella", "Plaza Vea", "Mall Aventura", "Casa Andina", "Tottus"],
    Sub.COMMERCIAL_RESTAURANT: ["Zig Zag", "Sol de Mayo", "Cevicheria Karloncho", "Tio Dario", "Chicha"],
    Sub.COMMERCIAL_SERVICE: ["Cineplanet", "Smart Fit", "Forum Rock", "Deja Vu"],
    Sub.INSTITUTIONAL: ["Santa Catalina", "Hospital Goyeneche", "Catedral de Arequipa", "Jesus Hostia"],
    Sub.INSTITUTIONAL_EDUCATION: ["UNSA", "UCSM", "Universidad Jorge Tadeo Lozano", "Colegio Independencia"],
    Sub.INSTITUTIONAL_CULTURAL: ["Santuarios Andinos", "Alianza Francesa", "Teatro Municipal", "Centro de las Artes"],
    Sub.INDUSTRIAL_OFFICES: ["Galeria San Jose", "Edificio Cronos", "Torre Tradicion"],
    Sub.RESIDENTIAL: ["Residencial Parque Central", "Condominio Los Alamos", "Cayma"],
    Sub.UNBUILT_LAND: ["Plaza de Armas", "Yanahuara", "Puente Bolognesi", "Selva Alegre", "Rio Chili"],
}

_OPENERS = [
    "Estoy", "Estamos", "Aquí", "Llegamos", "Llegando", "Disfrutando", "Pasando la tarde",
    "Un rato", "Por fin", "Otra vez", "Visitando", "Vine",
]
_FILLER = [
    "hoy", "tarde", "noche", "mañana", "día", "amigos", "amigas", "amigo", "bonito", "bonita",
    "feliz", "gente", "domingo", "sábado", "lindo", "linda", "mejor", "siempre", "ahora",
    "rato", "Arequipa", "buenas",
]
_HASHTAGS = ["arequipa", "peru", "travel", "weekend", "love", "instagood", "friends"]
_EMOJI = ["😀", "😍", "🙌", "❤️", "🎉", "☀️", "👌"]
_MISSPELL = {
    # elongations the edit-distance fallback repairs, and typos it cannot
    "comida": "comidaaa",
    "oficina": "oficinaa",
    "universidad": "universidaaad",
    "museo": "musseo",
    "zapato": "sapato",
    "parque": "parkee",
    "casa": "casaaaa",
}

_NONLOCATION = [
    "feliz cumpleaños hermano te quiero mucho",
    "no puedo creer lo que pasó en el partido",
    "qué son las condiciones objetivas de punibilidad",
    "buenas noches a todos",
    "extraño mucho a mi abuela",
    "la vida es mejor con música",
    "hoy es un gran día para ser feliz",
    "que gol tan increíble del equipo",
    "nunca entenderé a la gente",
    "pensando en ti siempre",
    "el presidente dio un mensaje a la nación",
    "qué frío hace esta mañana",
    "mucho calor este verano",
    "se viene la lluvia otra vez",
    "gracias a dios por otro año",
    "terminé la serie en una noche",
    "el nuevo capítulo está buenísimo",
    "ya quiero que sea viernes",
    "odio los lunes",
    "tengo mucho sueño",
    "bendiciones para todos",
    "qué triste noticia",
    "la política de este país no cambia",
    "mi perro es el mejor",
    "amor verdadero no existe",
    "estoy cansado de todo",
    "escuchando música toda la tarde",
    "la semana pasó volando",
    "el tiempo vuela",
    "nueva ley aprobada por el congreso",
    "quiero vacaciones ya",
    "recordando viejos tiempos",
    "mi equipo perdió otra vez",
    "alguien sabe la hora del partido",
    "qué linda sorpresa",
    "buen día mundo",
    "mañana será otro día",
    "no hay mal que dure cien años",
    "nunca dejes de soñar",
    "feliz año nuevo",
    "esta canción me encanta",
    "qué opinan de la noticia",
    "la economía del país preocupa",
    "ese video es muy gracioso",
    "creo que me voy a enfermar",
    "felicidades campeones",
    "a veces pienso demasiado",
    "la paciencia es una virtud",
    "solo quiero dormir",
    "el examen de mañana me preocupa",
]

# Scaled-down subcategory sizes; commercial dominates as in the private corpus.
SUB_SIZES = {
    Sub.COMMERCIAL: 34,
    Sub.COMMERCIAL_RESTAURANT: 28,
    Sub.COMMERCIAL_SERVICE: 20,
    Sub.INSTITUTIONAL: 22,
    Sub.INSTITUTIONAL_EDUCATION: 20,
    Sub.INSTITUTIONAL_CULTURAL: 20,
    Sub.INDUSTRIAL_OFFICES: 16,
    Sub.RESIDENTIAL: 18,
    Sub.UNBUILT_LAND: 22,
}


@dataclass(frozen=True)
class KeywordGroup:
    lemma: str
    forms: tuple[tuple[str, str], ...]  # (surface, tag)


def keyword_groups() -> dict[Sub, list[KeywordGroup]]:
    out: dict[Sub, list[KeywordGroup]] = {}
    for sub, block in _KEYWORDS.items():
        groups: dict[str, list[tuple[str, str]]] = {}
        for line in block.strip().splitlines():
            head, *forms = line.split()
            lemma, tag = head.split(":")
            groups.setdefault(lemma, []).extend((f, tag) for f in forms)
        out[sub] = [KeywordGroup(lemma, tuple(forms)) for lemma, forms in groups.items()]
    return out


def places() -> dict[Sub, list[str]]:
    return {k: list(v) for k, v in _PLACES.items()}


def _surface(word: str) -> str:
    return word.replace("_", " ")


def _location_text(rng: random.Random, sub: Sub, groups: dict[Sub, list[KeywordGroup]]) -> str:
    words: list[str] = []
    if rng.random() < 0.5:
        words.append(rng.choice(_OPENERS))
    n_kw = rng.choice((1, 2, 2, 3))
    chosen = rng.sample(groups[sub], n_kw)
    kws = [_surface(rng.choice(g.forms)[0]) for g in chosen]
    if rng.random() < 0.15:
        kws = [_MISSPELL.get(k, k) for k in kws]
    if rng.random() < 0.12:
        other = rng.choice([s for s in groups if s is not sub])
        kws.append(_surface(rng.choice(rng.choice(groups[other]).forms)[0]))
    fillers = rng.sample(_FILLER, rng.choice((0, 1, 1, 2)))
    body = kws + fillers
    rng.shuffle(body)
    words.extend(body)
    place = rng.choice(_PLACES[sub])
    style = rng.random()
    if style < 0.45:
        words += ["en", place]
    elif style < 0.7:
        words += [f"(@ {place} in Arequipa)"]
    elif style < 0.82:
        words += ["@", place]
    if rng.random() < 0.3:
        words.append("#" + rng.choice(kws).replace(" ", ""))
    if rng.random() < 0.2:
        words.append("#" + rng.choice(_HASHTAGS))
    if rng.random() < 0.2:
        words.append(rng.choice(_EMOJI))
    if rng.random() < 0.5:
        slug = "".join(rng.choice("abcdefghijkmnpqrstuvwxyzABCDEFGHJKLMNPQRSTUVWXYZ23456789") for _ in range(10))
        words.append(f"https://t.co/{slug}")
    text = " ".join(words)
    return text[0].upper() + text[1:]


def _nonlocation_text(rng: random.Random, base: str) -> str:
    text = base[0].upper() + base[1:]
    if rng.random() < 0.3:
        text += " #" + rng.choice(_HASHTAGS)
    if rng.random() < 0.3:
        text += " " + rng.choice(_EMOJI)
    return text


def generate(seed: int = DEFAULT_SEED) -> tuple[list[RawPost], list[dict]]:
    """Build the corpus: (posts, label records) in a deterministic order."""
    rng = random.Random(seed)
    groups = keyword_groups()
    items: list[tuple[str, dict]] = []
    for sub, size in SUB_SIZES.items():
        for _ in range(size):
            text = _location_text(rng, sub, groups)
            items.append((text, {"parent": None, "sub": sub}))
    for base in _NONLOCATION:
        items.append((_nonlocation_text(rng, base), {"parent": "NonClassified", "sub": None}))
    rng.shuffle(items)
    # a few records the ingest filter must drop
    junk = [items[3][0], "jajaja", "   ", "2019", "!!! ..."]
    posts: list[RawPost] = []
    labels: list[dict] = []
    for k, (text, label) in enumerate(items):
        post_id = f"c{k + 1:04d}"
        posts.append(_post(rng, post_id, text))
        labels.append(_label(post_id, label))
    for k, text in enumerate(junk):
        post_id = f"j{k + 1:04d}"
        posts.insert(10 + 25 * k, _post(rng, post_id, text))
    return posts, labels


def _label(post_id: str, label: dict) -> dict:
    from .taxonomy import SUB_TO_PARENT

    sub = label["sub"]
    if sub is None:
        return {"id": post_id, "parent": "NonClassified", "sub": None}
    return {"id": post_id, "parent": SUB_TO_PARENT[sub].value, "sub": sub.value}


def _post(rng: random.Random, post_id: str, text: str) -> RawPost:
    month = rng.choice(["2019-04", "2019-05", "2019-07", "2019-09", "2019-11", "2020-01"])
    ts = f"{month}-{rng.randint(1, 28):02d}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:00Z"
    # anywhere in the continent; the corpus is not geofiltered
    lat = round(rng.uniform(-34.0, 5.0), 6)
    lon = round(rng.uniform(-79.0, -40.0), 6)
    return RawPost(post_id, f"u{rng.randint(1, 400):03d}", text, ts, lat, lon, "es")


def write_corpus(out_dir: str | Path, seed: int = DEFAULT_SEED) -> tuple[Path, Path]:
    out = Path(out_dir)
    posts, labels = generate(seed)
    posts_path = out / "corpus_posts.jsonl"
    labels_path = out / "corpus_labels.jsonl"
    write_jsonl((p.to_json() for p in posts), posts_path)
    write_jsonl(labels, labels_path)
    return posts_path, labels_path


if __name__ == "__main__":  # pragma: no cover
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else ".", int(sys.argv[2]) if len(sys.argv) > 2 else DEFAULT_SEED)
