#!/usr/bin/env python3
"""Generates the semantic-map fixtures under data/maps/.

Each environment has three rooms; room-level partitions share the room boxes.
Label and item counts per environment are fixed below. Item placement is
seeded and reproducible: rerunning the script rewrites identical files.
"""

import json
import random
from pathlib import Path

KITCHEN = """stove fridge sink microwave coffeemaker toaster kitchentable kitchencounter
kitchencabinet dishwasher cutleryfork cutleryknife plate mug cup bowl fryingpan cookingpot
wineglass waterglass breadslice cereal milk juice apple banana bellpepper carrot chicken
salmon cupcake condimentbottle condimentshaker dishwashingliquid washingsponge oventray
knifeblock spoon kitchenchair kettle cuttingboard ricecooker spice teabox""".split()

LIVING = """sofa tv tvstand coffeetable remotecontrol bookshelf book desk computer keyboard
mouse cpuscreen chair radio clock curtains rug cellphone magazine newspaper painting plant
floorlamp tablelamp candle boardgame guitar speaker videogameconsole videogamecontroller
notes folder printer stapler armchair vase headset""".split()

BEDROOM = """bed nightstand closet clothespile clothesshirt clothespants hanger dresser alarmclock
slippers hairproduct facecream perfume mirror teddybear photoframe blanket novel jewelry
pillow laundrybasket ironingboard iron bedsidelamp shoes hat backpack""".split()

BATHROOM = """toilet bathtub shower bathroomcounter bathroomcabinet towel towelrack toothbrush
toothpaste barsoap faucet toiletpaper hairdryer comb razor deodorant bathmat plunger
mouthwash shampoo bodywash washingmachine detergent hairbrush sponge""".split()

SHARED = """lightswitch powersocket ceilinglamp window door wallshelf wallpictureframe
walllamp garbagecan smokedetector""".split()

# Labels the activity programs reference; they must exist in every map.
PROGRAM_LABELS = """computer chair keyboard fridge milk stove fryingpan kitchentable plate bed novel
closet clothesshirt coffeemaker mug cereal sofa tv remotecontrol newspaper desk juice sink
washingsponge dishwashingliquid laundrybasket clothespile washingmachine detergent
ironingboard iron cookingpot kitchencounter bowl cutleryknife carrot bellpepper
garbagecan""".split()

# Small objects that receive the extra instances.
MULTI = set("""plate mug cup bowl cutleryfork cutleryknife spoon wineglass waterglass apple banana
breadslice condimentbottle condimentshaker cupcake book magazine notes folder candle plant
painting clothespile clothesshirt clothespants hanger pillow shoes towel barsoap toiletpaper
photoframe kitchenchair chair rug""".split())

# Labels that must stay in a single room (program targets).
SINGLE_ROOM = set(PROGRAM_LABELS) - {"garbagecan"}

ENVS = {
    "env0": {
        "rooms": [("kitchen", (0, 0), (6, 5)), ("livingroom", (6, 0), (14, 10)),
                  ("bedroom", (0, 5), (6, 10))],
        "category_room": {"kitchen": 0, "living": 1, "bed": 2, "bath": 0},
        "categories": {"kitchen": 44, "living": 37, "bed": 22, "bath": 2},
        "classes": 115,
        "items": 443,
        "seed": 100,
    },
    "env1": {
        "rooms": [("bathroom", (0, 0), (4, 6)), ("kitchen", (4, 0), (10, 6)),
                  ("bedroom", (0, 6), (10, 12))],
        "category_room": {"kitchen": 1, "living": 2, "bed": 2, "bath": 0},
        "categories": {"kitchen": 36, "living": 14, "bed": 20, "bath": 18},
        "classes": 98,
        "items": 357,
        "seed": 101,
    },
    "env2": {
        "rooms": [("livingroom", (0, 0), (9, 7)), ("kitchen", (9, 0), (15, 7)),
                  ("bedroom", (0, 7), (15, 12))],
        "category_room": {"kitchen": 1, "living": 0, "bed": 2, "bath": 2},
        "categories": {"kitchen": 38, "living": 24, "bed": 20, "bath": 8},
        "classes": 100,
        "items": 324,
        "seed": 102,
    },
}

LARGE = set("""stove fridge sink dishwasher kitchentable kitchencounter kitchencabinet sofa tv tvstand
coffeetable bookshelf desk bed closet dresser bathtub shower bathroomcounter washingmachine
ironingboard armchair nightstand toilet door window""".split())

CEILING = 3.0


def category_of(label):
    for name, pool in (("kitchen", KITCHEN), ("living", LIVING), ("bed", BEDROOM),
                       ("bath", BATHROOM)):
        if label in pool:
            return name
    return "shared"


def pick_labels(env, rng):
    chosen = []
    for name, pool in (("kitchen", KITCHEN), ("living", LIVING), ("bed", BEDROOM),
                       ("bath", BATHROOM)):
        want = env["categories"][name]
        required = [l for l in pool if l in PROGRAM_LABELS]
        optional = [l for l in pool if l not in PROGRAM_LABELS]
        rng.shuffle(optional)
        take = required + optional[: max(0, want - len(required))]
        chosen.extend(sorted(take))
    chosen.extend(SHARED)
    if len(chosen) != env["classes"]:
        raise SystemExit(f"label count {len(chosen)} != {env['classes']}")
    return chosen


def make_item(item_id, label, room, rng, flat=False):
    (x0, y0), (x1, y1) = room[1], room[2]
    size = rng.uniform(0.8, 2.0) if label in LARGE else rng.uniform(0.1, 0.4)
    height = rng.uniform(0.5, 1.8) if label in LARGE else rng.uniform(0.05, 0.3)
    margin = 0.05
    cx = rng.uniform(x0 + margin + size / 2, x1 - margin - size / 2)
    cy = rng.uniform(y0 + margin + size / 2, y1 - margin - size / 2)
    z0 = 0.0 if label in LARGE else rng.choice([0.0, 0.75, 0.9, 1.2])
    if label in ("ceilinglamp", "smokedetector"):
        z0 = CEILING - height
    depth = 0.0 if flat else size
    lo = [round(cx - size / 2, 3), round(cy - depth / 2, 3), round(z0, 3)]
    hi = [round(cx + size / 2, 3), round(cy + depth / 2, 3), round(z0 + height, 3)]
    pos = [round(cx, 3), round(cy, 3), round(z0 + height / 2, 3)]
    return {"id": item_id, "label": label, "position": pos, "min": lo, "max": hi}


def door_between(item_id, a, b):
    """A door box straddling the wall shared by rooms a and b, biased into a."""
    (ax0, ay0), (ax1, ay1) = a[1], a[2]
    (bx0, by0), (bx1, by1) = b[1], b[2]
    if ax1 == bx0 or bx1 == ax0:
        wall_x = ax1 if ax1 == bx0 else ax0
        y = (max(ay0, by0) + min(ay1, by1)) / 2
        into_a = -0.1 if ax1 == bx0 else 0.1
        lo = [wall_x - 0.15 + into_a, y - 0.45, 0.0]
        hi = [wall_x + 0.15 + into_a, y + 0.45, 2.1]
    else:
        wall_y = ay1 if ay1 == by0 else ay0
        x = (max(ax0, bx0) + min(ax1, bx1)) / 2
        into_a = -0.1 if ay1 == by0 else 0.1
        lo = [x - 0.45, wall_y - 0.15 + into_a, 0.0]
        hi = [x + 0.45, wall_y + 0.15 + into_a, 2.1]
    pos = [round((l + h) / 2, 3) for l, h in zip(lo, hi)]
    return {"id": item_id, "label": "door", "position": pos,
            "min": [round(v, 3) for v in lo], "max": [round(v, 3) for v in hi]}


def build(name, env):
    rng = random.Random(env["seed"])
    rooms = env["rooms"]
    labels = pick_labels(env, rng)

    # Instance count per label, then per-label room placement.
    counts = {l: (len(rooms) if category_of(l) == "shared" else 1) for l in labels}
    extra = env["items"] - sum(counts.values())
    multi = sorted(l for l in labels if l in MULTI)
    while extra > 0:
        counts[rng.choice(multi)] += 1
        extra -= 1

    items = []
    next_id = 1
    for label in labels:
        cat = category_of(label)
        for k in range(counts[label]):
            if cat == "shared":
                room_index = k % len(rooms)
            elif label in SINGLE_ROOM or rng.random() < 0.85:
                room_index = env["category_room"][cat]
            else:
                room_index = rng.randrange(len(rooms))
            if label == "door":
                a, b = rooms[room_index], rooms[(room_index + 1) % len(rooms)]
                items.append(door_between(next_id, a, b))
            else:
                flat = label in ("wallpictureframe", "painting") and k == 0
                items.append(make_item(next_id, label, rooms[room_index], rng, flat=flat))
            next_id += 1

    room_json = [{"name": n, "min": [lo[0], lo[1], 0.0], "max": [hi[0], hi[1], CEILING]}
                 for n, lo, hi in rooms]
    partitions = [{"id": k, "name": r["name"], "room_index": k, "min": r["min"], "max": r["max"]}
                  for k, r in enumerate(room_json)]
    return {"rooms": room_json, "items": items, "partitions": partitions}


def main():
    out_dir = Path(__file__).resolve().parent.parent / "data" / "maps"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, env in ENVS.items():
        doc = build(name, env)
        labels = {i["label"] for i in doc["items"]}
        assert len(labels) == env["classes"], (name, len(labels))
        assert len(doc["items"]) == env["items"], (name, len(doc["items"]))
        (out_dir / f"{name}.map.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{name}: {len(labels)} classes, {len(doc['items'])} items")


if __name__ == "__main__":
    main()
