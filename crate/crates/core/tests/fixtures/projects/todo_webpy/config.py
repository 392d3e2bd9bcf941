DEBUG = True
PORT = 8080
