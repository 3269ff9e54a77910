# utils/certificates.py

import json
import os
from typing import Any, Dict, List

from utils.logger import setup_logger

logger = setup_logger("certificates", "certificates.log")


class CertificateStore:
    """Collects certificate records and writes them as JSON lines"""

    def __init__(self):
        self.records: List[Dict[str, Any]] = []

    def add(self, kind: str, inputs: Dict, payload: Dict, metadata: Dict = None):
        """Add one certificate record"""
        record = {
            "kind": kind,
            "inputs": inputs,
            "payload": payload,
            "metadata": metadata or {},
        }
        self.records.append(record)
        logger.debug(f"Added {kind} certificate (total: {len(self.records)})")
        return record

    def save(self, path: str) -> str:
        """Write every record to path, one JSON object per line, keys sorted"""
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", newline="\n") as f:
            for record in self.records:
                f.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
        logger.info(f"Saved {len(self.records)} certificates to {path}")
        return path

