"""
Database module for macOrthoSim
Run history of verification commands in SQLite
"""

import json
import os
import sqlite3
from datetime import datetime


class DatabaseManager:
    """Manages the SQLite run-history database"""

    def __init__(self, dbPath='database/macOrtho.db'):
        """Open the database, creating directory and tables if needed"""
        self.dbPath = dbPath
        directory = os.path.dirname(dbPath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.connection = sqlite3.connect(dbPath)
        self.cursor = self.connection.cursor()
        self._createTables()

    def _createTables(self):
        self.cursor.execute('''
            CREATE TABLE IF NOT EXISTS verificationRuns (
                runId INTEGER PRIMARY KEY AUTOINCREMENT,
                command TEXT NOT NULL,
                parameters TEXT,
                precisionBits INTEGER NOT NULL,
                verifyTol REAL NOT NULL,
                quadTarget REAL NOT NULL,
                startTime TIMESTAMP NOT NULL,
                endTime TIMESTAMP,
                wallTime REAL,
                overallPass INTEGER
            )
        ''')

        # One row per VerificationReport
        self.cursor.execute('''
            CREATE TABLE IF NOT EXISTS checkResults (
                checkId INTEGER PRIMARY KEY AUTOINCREMENT,
                runId INTEGER NOT NULL,
                name TEXT NOT NULL,
                eq TEXT,
                absResidual REAL,
                relResidual REAL,
                tolerance REAL,
                passed INTEGER NOT NULL,
                note TEXT,
                FOREIGN KEY (runId) REFERENCES verificationRuns(runId)
            )
        ''')

        self.connection.commit()

    def startVerificationRun(self, command, parameters, ctx):
        """Create a new run and return its ID"""
        self.cursor.execute('''
            INSERT INTO verificationRuns
            (command, parameters, precisionBits, verifyTol, quadTarget, startTime)
            VALUES (?, ?, ?, ?, ?, ?)
        ''', (command, json.dumps(parameters, default=str), ctx.bits, float(ctx.verifyTol),
              float(ctx.quadTarget), datetime.now()))
        self.connection.commit()
        return self.cursor.lastrowid

    def logCheck(self, runId, report):
        """Record one VerificationReport"""
        self.cursor.execute('''
            INSERT INTO checkResults
            (runId, name, eq, absResidual, relResidual, tolerance, passed, note)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?)
        ''', (runId, report.name, report.eq, float(report.absResidual), float(report.relResidual),
              float(report.tolerance), 1 if report.passed else 0, report.note or None))
        self.connection.commit()

    def endVerificationRun(self, runId, overallPass, wallTime):
        self.cursor.execute('''
            UPDATE verificationRuns
            SET endTime = ?, wallTime = ?, overallPass = ?
            WHERE runId = ?
        ''', (datetime.now(), wallTime, 1 if overallPass else 0, runId))
        self.connection.commit()

    def getRunStatistics(self, runId):
        """Check counts and worst residual of a run, grouped by equation tag"""
        stats = {'byEquation': {}}
        self.cursor.execute('''
            SELECT eq,
                   COUNT(*) as totalChecks,
                   SUM(passed) as passedChecks,
                   MAX(absResidual) as worstResidual
            FROM checkResults
            WHERE runId = ?
            GROUP BY eq
            ORDER BY eq
        ''', (runId,))

        for row in self.cursor.fetchall():
            stats['byEquation'][row[0]] = {
                'totalChecks': row[1],
                'passedChecks': row[2],
                'worstResidual': row[3]
            }

        stats['totalChecks'] = sum(v['totalChecks'] for v in stats['byEquation'].values())
        stats['failedChecks'] = sum(v['totalChecks'] - v['passedChecks'] for v in stats['byEquation'].values())
        return stats

    def getRecentRuns(self, limit=20):
        """Most recent runs, newest first, as a list of dicts"""
        self.cursor.execute('''
            SELECT runId, command, parameters, precisionBits, startTime, wallTime, overallPass
            FROM verificationRuns
            ORDER BY runId DESC
            LIMIT ?
        ''', (limit,))
        columns = [d[0] for d in self.cursor.description]
        return [dict(zip(columns, row)) for row in self.cursor.fetchall()]

    def close(self):
        """Close database connection"""
        self.connection.close()
