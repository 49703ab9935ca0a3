"""Store verification reports and read them back as a table."""
import logging
from datetime import datetime, timezone

import pandas as pd
from sqlalchemy import select
from sqlalchemy.orm import sessionmaker

from db import get_dialect_name, get_engine
from models import Base, Report, ReportRecord

HISTORY_COLUMNS = ["id", "suite", "params", "cases", "failures", "passed", "wall_ms", "created_at"]


def ensure_tables(engine):
    Base.metadata.create_all(engine)


def store_report(report: Report, engine=None) -> int:
    if engine is None:
        engine = get_engine()
    ensure_tables(engine)
    Session = sessionmaker(bind=engine)
    session = Session()
    try:
        row = ReportRecord(
            suite=report.suite,
            params=dict(report.params),
            cases=report.cases,
            failures=len(report.failures),
            passed=report.passed,
            wall_ms=report.wall_ms,
            payload=report.to_dict(),
            created_at=datetime.now(timezone.utc).replace(tzinfo=None),
        )
        session.add(row)
        session.commit()
        logging.info("Stored %s report as row %d (%s)", report.suite, row.id, get_dialect_name(engine))
        return row.id
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def load_history(engine=None, suite=None, limit=None) -> pd.DataFrame:
    """Stored reports, newest first."""
    if engine is None:
        engine = get_engine()
    ensure_tables(engine)
    stmt = select(ReportRecord).order_by(ReportRecord.id.desc())
    if suite:
        stmt = stmt.where(ReportRecord.suite == suite)
    if limit is not None:
        stmt = stmt.limit(limit)
    Session = sessionmaker(bind=engine)
    session = Session()
    try:
        rows = session.execute(stmt).scalars().all()
        records = [{col: getattr(r, col) for col in HISTORY_COLUMNS} for r in rows]
    finally:
        session.close()
    if not records:
        return pd.DataFrame(columns=HISTORY_COLUMNS)
    return pd.DataFrame(records, columns=HISTORY_COLUMNS)
