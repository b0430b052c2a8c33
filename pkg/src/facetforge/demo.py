"""Seed corpus: the biliary-implant / textured-surface scenario.

Ten small documents around one story: implants that clog, catheters and
ducts with textured inner walls, and drag-reducing surfaces from other
fields (golf balls, whale-inspired blades, ship hulls). The vocabulary,
pictures and classifications are sized so every engine feature is
exercised: multi-expert merges, instance edges, multi-hop chains,
multi-classifier aggregation, federation codes and multilingual labels.
"""

from __future__ import annotations

from pathlib import Path

from .engine import Engine
from .errors import NonEmptyTarget
from .workspace import Workspace

#: (id, en label, en definition, extra languages {lang: (label, definition)})
CLASSES = [
    # technology / science
    ("surface-materials", "surface materials",
     "Engineering of the texture, finish and composition of functional surfaces.", {}),
    ("coatings", "coatings",
     "Thin functional layers applied onto a substrate.", {}),
    ("fluid-dynamics", "fluid dynamics",
     "Behaviour of liquids and gases in motion, including boundary layers.", {}),
    ("drug-chemistry", "drug chemistry",
     "Pharmaceutical compounds and their controlled release.", {}),
    # application
    ("stent", "stent",
     "Tubular prosthesis that holds a body passage open.",
     {"de": ("Stent", "Rohrfoermige Prothese, die einen Koerperkanal offen haelt.")}),
    ("biliary-stent", "biliary stent",
     "Stent placed in a bile duct.", {}),
    ("catheter", "catheter",
     "Flexible tube inserted into the body to drain or deliver fluids.",
     {"de": ("Katheter", "Flexibler Schlauch zum Ableiten oder Zufuehren von Fluessigkeiten.")}),
    ("conduit", "conduit",
     "Tube or duct that carries a fluid between two points.", {}),
    ("pipeline", "pipeline",
     "Long-distance piping system for transporting fluids.", {}),
    ("ship-hull", "ship hull",
     "Submerged outer body of a vessel.", {}),
    ("golf-ball", "golf ball",
     "Small dimpled ball used in golf.", {}),
    ("helicopter-blade", "helicopter blade",
     "Rotor blade producing lift on a rotary-wing aircraft.", {}),
    # operating mode
    ("in-situ", "use in place",
     "The artifact operating in its installed position.", {}),
    ("insertion", "insertion",
     "Placing or deploying the artifact into its working position.", {}),
    ("manufacture", "manufacture",
     "Making or fabricating the artifact.", {}),
    ("design", "design",
     "Specifying the artifact before it is made.", {}),
    # problem
    ("occlusion", "occlusion",
     "Progressive blockage of a passage or lumen.", {}),
    ("bacteria-buildup", "bacteria buildup",
     "Accumulation of bacterial films on a surface.", {}),
    ("fouling", "fouling",
     "Unwanted deposits accumulating on a wetted surface.", {}),
    ("drag", "drag",
     "Resistance a surface meets when moving through a fluid.", {}),
    # solution
    ("sharkskin-lining", "sharkskin lining",
     "Biomimetic riblet texture imitating shark skin.", {}),
    ("riblet-lining", "riblet lining",
     "Inner wall covered with fine longitudinal ridges.", {}),
    ("lithographed-surface", "lithographed surface",
     "Surface micro-structured by lithographic patterning.", {}),
    ("polished-surface", "polished surface",
     "Surface finished to minimal roughness.", {}),
    ("drug-eluting-coating", "drug-eluting coating",
     "Coating that releases an active compound over time.", {}),
    ("dimpled-surface", "dimpled surface",
     "Surface covered with small concave depressions.", {}),
    ("tubercle-surface", "tubercle surface",
     "Leading edge with rounded bumps inspired by whale flippers.", {}),
]

#: (picture_id, expert, facet, focal, neighbors [[class, sim]...], instances)
PICTURES = [
    ("pic-app-stent-a", "e-meddev", "application", "stent",
     [["catheter", 0.8], ["conduit", 0.5]], ["biliary-stent"]),
    ("pic-app-stent-b", "e-surfaces", "application", "stent",
     [["catheter", 0.9]], []),
    ("pic-app-conduit", "e-fluids", "application", "conduit",
     [["pipeline", 0.7]], []),
    ("pic-prob-occlusion", "e-meddev", "problem", "occlusion",
     [["bacteria-buildup", 0.7], ["fouling", 0.6]], []),
    ("pic-prob-fouling", "e-fluids", "problem", "fouling",
     [["bacteria-buildup", 0.6], ["drag", 0.5]], []),
    ("pic-sol-sharkskin", "e-surfaces", "solution", "sharkskin-lining",
     [["riblet-lining", 0.9], ["lithographed-surface", 0.8],
      ["dimpled-surface", 0.5], ["tubercle-surface", 0.5]], []),
    ("pic-tech-surface", "e-surfaces", "technology_science", "surface-materials",
     [["coatings", 0.8], ["fluid-dynamics", 0.5]], []),
    ("pic-mode-insitu", "e-meddev", "operating_mode", "in-situ",
     [["insertion", 0.4]], []),
]

DOCUMENTS = [
    {"doc_id": "pat-drug-stent",
     "title": "Stent with timed-release medicated coating",
     "abstract": "An expandable vascular support whose coating elutes an "
                 "anti-proliferative agent to keep the lumen patent.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-polished-stent",
     "title": "Bile duct support with mirror-finished fluoropolymer bore",
     "abstract": "A biliary prosthesis whose inner bore is polished to reduce "
                 "sludge adhesion.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-rough-conduit",
     "title": "Tubular duct having a relief-patterned inner wall",
     "abstract": "A fluid duct whose lumen wall carries a fine relief that "
                 "agitates the boundary layer and discourages deposits.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-litho-catheter",
     "title": "Drainage tube with printed micro-texture bore",
     "abstract": "A urinary drainage tube whose bore carries a lithographically "
                 "printed micro-texture that resists microbial films.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "npl-golf-dimples",
     "title": "Why dimples make golf balls fly farther",
     "abstract": "Measurements of boundary-layer behaviour over dimpled spheres.",
     "source": "npl", "external_codes": [], "language": "en"},
    {"doc_id": "npl-whale-tubercles",
     "title": "Bumpy leading edges on rotor blades after the humpback flipper",
     "abstract": "Wind-tunnel study of tubercled blades delaying stall.",
     "source": "npl", "external_codes": [], "language": "en"},
    {"doc_id": "pat-sharkskin-hull",
     "title": "Vessel skin with ribbed micro-relief",
     "abstract": "A hull wrap with shark-inspired riblets cutting drag and "
                 "deposit growth.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-balloon-catheter",
     "title": "Guide tube with inflatable placement aid",
     "abstract": "A flexible tube whose balloon tip eases advancement through "
                 "narrow passages.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-pipeline-liner",
     "title": "Self-cleaning liner for transport piping",
     "abstract": "A pipe liner whose coating sheds wax and scale deposits.",
     "source": "patent", "external_codes": [], "language": "en"},
    {"doc_id": "pat-stent-graft",
     "title": "Delivery system for an implantable tubular graft",
     "abstract": "Apparatus for transluminal placement of a tubular graft.",
     "source": "patent",
     "external_codes": [["IPC", "A61F2/82"], ["IPC", "A61L31/16"]],
     "language": "en"},
]

#: (doc, facet, class, degree, classifier)
ASSIGNMENTS = [
    ("pat-drug-stent", "application", "stent", 1.0, "c-med"),
    ("pat-drug-stent", "technology_science", "drug-chemistry", 1.0, "c-med"),
    ("pat-drug-stent", "operating_mode", "in-situ", 1.0, "c-med"),
    ("pat-drug-stent", "problem", "occlusion", 0.9, "c-med"),
    ("pat-drug-stent", "solution", "drug-eluting-coating", 1.0, "c-med"),

    ("pat-polished-stent", "application", "biliary-stent", 1.0, "c-med"),
    ("pat-polished-stent", "technology_science", "surface-materials", 0.8, "c-med"),
    ("pat-polished-stent", "operating_mode", "in-situ", 0.9, "c-med"),
    ("pat-polished-stent", "problem", "occlusion", 0.7, "c-med"),
    ("pat-polished-stent", "solution", "polished-surface", 1.0, "c-med"),

    ("pat-rough-conduit", "application", "conduit", 1.0, "c-eng"),
    ("pat-rough-conduit", "technology_science", "surface-materials", 0.8, "c-eng"),
    ("pat-rough-conduit", "operating_mode", "in-situ", 0.9, "c-eng"),
    ("pat-rough-conduit", "problem", "occlusion", 0.5, "c-med"),
    ("pat-rough-conduit", "problem", "occlusion", 0.7, "c-eng"),
    ("pat-rough-conduit", "problem", "fouling", 0.8, "c-eng"),
    ("pat-rough-conduit", "solution", "riblet-lining", 0.8, "c-eng"),

    ("pat-litho-catheter", "application", "catheter", 1.0, "c-med"),
    ("pat-litho-catheter", "technology_science", "surface-materials", 1.0, "c-eng"),
    ("pat-litho-catheter", "operating_mode", "in-situ", 1.0, "c-med"),
    ("pat-litho-catheter", "problem", "bacteria-buildup", 0.9, "c-med"),
    ("pat-litho-catheter", "solution", "lithographed-surface", 1.0, "c-eng"),

    ("npl-golf-dimples", "application", "golf-ball", 1.0, "c-eng"),
    ("npl-golf-dimples", "technology_science", "fluid-dynamics", 1.0, "c-eng"),
    ("npl-golf-dimples", "operating_mode", "in-situ", 0.8, "c-eng"),
    ("npl-golf-dimples", "problem", "drag", 1.0, "c-eng"),
    ("npl-golf-dimples", "solution", "dimpled-surface", 1.0, "c-eng"),

    ("npl-whale-tubercles", "application", "helicopter-blade", 1.0, "c-eng"),
    ("npl-whale-tubercles", "technology_science", "fluid-dynamics", 0.9, "c-eng"),
    ("npl-whale-tubercles", "operating_mode", "in-situ", 0.8, "c-eng"),
    ("npl-whale-tubercles", "problem", "drag", 0.9, "c-eng"),
    ("npl-whale-tubercles", "solution", "tubercle-surface", 1.0, "c-eng"),

    ("pat-sharkskin-hull", "application", "ship-hull", 1.0, "c-eng"),
    ("pat-sharkskin-hull", "technology_science", "surface-materials", 0.9, "c-eng"),
    ("pat-sharkskin-hull", "technology_science", "coatings", 0.9, "c-eng"),
    ("pat-sharkskin-hull", "operating_mode", "in-situ", 0.7, "c-eng"),
    ("pat-sharkskin-hull", "problem", "fouling", 1.0, "c-eng"),
    ("pat-sharkskin-hull", "problem", "drag", 0.7, "c-eng"),
    ("pat-sharkskin-hull", "solution", "sharkskin-lining", 1.0, "c-eng"),

    ("pat-balloon-catheter", "application", "catheter", 1.0, "c-med"),
    ("pat-balloon-catheter", "operating_mode", "insertion", 1.0, "c-med"),
    ("pat-balloon-catheter", "problem", "occlusion", 0.5, "c-med"),

    ("pat-pipeline-liner", "application", "pipeline", 1.0, "c-eng"),
    ("pat-pipeline-liner", "technology_science", "coatings", 0.8, "c-eng"),
    ("pat-pipeline-liner", "operating_mode", "in-situ", 0.9, "c-eng"),
    ("pat-pipeline-liner", "problem", "fouling", 0.9, "c-eng"),
    ("pat-pipeline-liner", "solution", "polished-surface", 0.6, "c-eng"),
]

#: (scheme, code, facet, class, sigma)
MAPPINGS = [
    ("IPC", "A61F2/82", "application", "stent", 0.9),
]

PRIOR_ART_QUERY = {
    "mode": "prior_art",
    "h": 3,
    "theta": 0.05,
    "selections": {
        "application": [["stent", 1.0]],
        "technology_science": [["surface-materials", 1.0]],
        "operating_mode": [["in-situ", 1.0]],
        "problem": [["occlusion", 1.0]],
        "solution": [["sharkskin-lining", 1.0]],
    },
}

SOLUTION_QUERY = {**PRIOR_ART_QUERY, "mode": "solution"}


def registry_payload() -> dict:
    classes = []
    for class_id, label, definition, extra in CLASSES:
        labels = {"en": label}
        definitions = {"en": definition}
        for lang, (lab, dfn) in extra.items():
            labels[lang] = lab
            definitions[lang] = dfn
        classes.append(
            {"id": class_id, "labels": labels, "definitions": definitions,
             "created_by": "e-meddev", "status": "active"}
        )
    return {"format": "facetforge-registry/1", "classes": classes}


def picture_payloads() -> list[dict]:
    return [
        {"format": "facetforge-picture/1", "picture_id": pid, "expert": expert,
         "facet": facet, "focal": focal, "neighbors": neighbors, "instances": instances}
        for pid, expert, facet, focal, neighbors, instances in PICTURES
    ]


def assignment_payloads() -> list[dict]:
    return [
        {"doc": doc, "facet": facet, "class": class_id, "degree": degree,
         "classifier": classifier}
        for doc, facet, class_id, degree, classifier in ASSIGNMENTS
    ]


def mapping_payloads() -> list[dict]:
    return [
        {"scheme": scheme, "code": code, "facet": facet, "class": class_id, "sigma": sigma}
        for scheme, code, facet, class_id, sigma in MAPPINGS
    ]


def build_demo_engine() -> Engine:
    from .classification import assignment_from_json
    from .corpus import document_from_json
    from .federation import mapping_from_json
    from .pictures import picture_from_json
    from .registry import entry_from_json

    engine = Engine()
    for obj in registry_payload()["classes"]:
        engine.add_class(entry_from_json(obj))
    for obj in DOCUMENTS:
        engine.corpus.add(document_from_json(obj))
    for obj in picture_payloads():
        engine.upsert_picture(picture_from_json(obj))
    for obj in assignment_payloads():
        engine.assign(**assignment_from_json(obj))
    for obj in mapping_payloads():
        engine.add_mapping(mapping_from_json(obj))
    return engine


def seed_workspace(target: str | Path) -> Workspace:
    """Create a demo workspace at ``target`` (which must not already hold
    anything) and write the seed files next to the snapshot."""
    target = Path(target)
    if target.exists() and any(target.iterdir()):
        raise NonEmptyTarget(f"{target} already exists and is not empty")
    ws = Workspace.init(target)

    import json

    seed_dir = target / "seed"
    seed_dir.mkdir()
    (seed_dir / "registry.json").write_text(
        json.dumps(registry_payload(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    with (seed_dir / "pictures.jsonl").open("w", encoding="utf-8") as fh:
        for obj in picture_payloads():
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    with (seed_dir / "corpus.jsonl").open("w", encoding="utf-8") as fh:
        for obj in DOCUMENTS:
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    with (seed_dir / "assignments.jsonl").open("w", encoding="utf-8") as fh:
        for obj in assignment_payloads():
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    with (seed_dir / "mappings.jsonl").open("w", encoding="utf-8") as fh:
        for obj in mapping_payloads():
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    (seed_dir / "query-prior-art.json").write_text(
        json.dumps(PRIOR_ART_QUERY, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    (seed_dir / "query-solution.json").write_text(
        json.dumps(SOLUTION_QUERY, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )

    ws.compact(build_demo_engine())
    return ws
