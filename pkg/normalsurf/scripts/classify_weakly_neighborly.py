#!/usr/bin/env python3
import json
import os
import time
from typing import Optional
from typing import Sequence

from dotenv import load_dotenv

from normalsurf.slicing.search import CLASSIFICATION_LIBRARY
from normalsurf.slicing.search import SearchResult
from normalsurf.slicing.search import classify_library

load_dotenv()


class WeaklyNeighborlyClassifier:
    OUTPUT_FILE = "weakly_neighborly_slicings.json"
    PROGRESS_FILE = "classification_progress.json"

    def __init__(self, output_file: Optional[str] = None, progress_file: Optional[str] = None):
        self.output_file = output_file or self.OUTPUT_FILE
        self.progress_file = progress_file or self.PROGRESS_FILE
        self.completed: list[str] = []
        self.results: dict[str, dict] = {}

    def load_progress(self):
        if os.path.exists(self.progress_file):
            with open(self.progress_file, "r") as f:
                progress = json.load(f)
                self.completed = progress.get("completed", [])
                print(f"Resuming after {len(self.completed)} complexes")
        if self.completed and os.path.exists(self.output_file):
            with open(self.output_file, "r") as f:
                self.results = json.load(f)

    def save_progress(self):
        progress = {"completed": self.completed, "timestamp": time.time()}
        with open(self.progress_file, "w") as f:
            json.dump(progress, f)
        with open(self.output_file, "w") as f:
            json.dump(self.results, f, indent=2)

    @staticmethod
    def serialize(result: SearchResult) -> dict:
        return {
            "examined": result.examined,
            "skipped_symmetric": result.skipped_symmetric,
            "slicings": [
                {
                    "v1": sorted(row.partition.v1),
                    "v2": sorted(row.partition.v2),
                    "f_vector": list(row.stats.f_vector),
                    "chi": row.stats.chi,
                    "orientable": row.stats.orientable,
                    "surface_type": row.surface_type,
                    "bounds": row.digest,
                }
                for row in result.rows
            ],
        }

    def classify(self, names: Sequence[str] = CLASSIFICATION_LIBRARY, jobs: Optional[int] = None):
        for i, name in enumerate(names):
            if name in self.completed:
                continue

            print(f"Classifying {i + 1}/{len(names)}: {name}")
            result = classify_library([name], jobs=jobs).results[name]
            self.results[name] = self.serialize(result)
            self.completed.append(name)
            self.save_progress()
            print(f"  {len(result.rows)} weakly neighborly of {result.examined} partitions")

        types = sorted(
            {
                slicing["surface_type"]
                for entry in self.results.values()
                for slicing in entry["slicings"]
            }
        )
        print("\nClassification complete!")
        print(f"Surface types found: {', '.join(types) or 'none'}")
        print(f"Output saved to: {self.output_file}")

        if os.path.exists(self.progress_file):
            os.remove(self.progress_file)
        return types


def main():
    classifier = WeaklyNeighborlyClassifier()
    classifier.load_progress()
    classifier.classify()


if __name__ == "__main__":
    import django

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "normalsurf.settings")
    django.setup()
    main()
