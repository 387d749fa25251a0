"""Create settings table

Revision ID: 3b9e51c0d7a2
Revises: 
Create Date: 2024-06-01 09:12:44.118203

"""
import sqlalchemy as sa
from sqlalchemy_utils.types import JSONType

from alembic import op

# revision identifiers, used by Alembic.
revision = "3b9e51c0d7a2"
down_revision = None
branch_labels = None
depends_on = None


def upgrade() -> None:
    op.create_table(
        "settings",
        sa.Column("section", sa.String(length=50), nullable=False),
        sa.Column("config", JSONType(), nullable=False),
        sa.PrimaryKeyConstraint("section"),
    )


def downgrade() -> None:
    op.drop_table("settings")
