"""
Reproduce Transition Table
Print the critical K/J of each perturbed code, derived through the virtual
Ising mapping where one exists.
"""

import os
import sys

import pandas as pd

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from topoising import create_app
from topoising.services.critical_service import CriticalService

# Lattice size for derived rows; color rows round up to a colorable size
TABLE_SIZE = int(os.environ.get('TABLE_SIZE', '6'))


def main():
    app = create_app()
    with app.app_context():
        precise = os.environ.get('TOPOISING_PRECISE_CRITICAL', 'false').lower() == 'true'
        rows = CriticalService.emit_table(precise=precise, size=TABLE_SIZE)
        df = pd.DataFrame([row.to_dict() for row in rows])
        print(df[['code', 'lattice', 'mapped_lattice', 'K/J', 'source']].to_string(index=False))
        app.logger.info(f"Reproduced {len(rows)} table rows at size {TABLE_SIZE}")


if __name__ == '__main__':
    main()
