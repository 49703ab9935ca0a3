import logging
import os

from dotenv import load_dotenv
from sqlalchemy import create_engine

load_dotenv()

FALLBACK_URL = "sqlite:///reports.db"


def get_database_url():
    return os.getenv("DATABASE_URL")


def get_engine(url=None, **kwargs):
    """Return a SQLAlchemy engine for the report ledger.

    An explicit url wins; otherwise DATABASE_URL, and sqlite when that is unset or unreachable.
    """
    db_url = url or get_database_url()
    if db_url:
        try:
            engine = create_engine(db_url, future=True, **kwargs)
            # cheap connect to check reachability
            with engine.connect():
                pass
            return engine
        except Exception as exc:
            if url:
                raise
            logging.warning("database at DATABASE_URL unreachable (%s); using %s", exc, FALLBACK_URL)
    return create_engine(FALLBACK_URL, future=True, **kwargs)


def get_dialect_name(engine):
    return engine.dialect.name
