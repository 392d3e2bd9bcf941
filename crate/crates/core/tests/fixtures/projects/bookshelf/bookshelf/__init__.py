from flask import Flask

from .api.books import books
from .api.authors import authors


def create_app():
    app = Flask(__name__)
    app.register_blueprint(books, url_prefix="/books")
    app.register_blueprint(authors, url_prefix="/authors")
    return app
